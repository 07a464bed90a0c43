#include "arac/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "arac/errors.hpp"

namespace arac {
namespace {

using nlohmann::json;

Vector pooled_component(const Dataset& d, int dim) {
  Vector values;
  values.reserve(d.total_steps());
  for (const auto& tr : d.trajectories)
    for (const auto& s : tr.steps) values.push_back(s.state[dim]);
  return values;
}

inline double atom_value(const HingeAtom& a, std::span<const double> state,
                         const KnotGrid& grid) {
  const double c = grid.knots[a.dim][a.knot];
  const double s = state[a.dim];
  return hinge(a.negative ? c - s : s - c);
}

}  // namespace

double sample_quantile(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) throw DataError("quantile of empty sample");
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const double fl = std::floor(h);
  std::size_t lo = static_cast<std::size_t>(fl);
  if (lo >= n - 1) return sorted[n - 1];
  const double frac = h - fl;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::array<double, 10> compute_deciles(const Dataset& d, int dim) {
  if (d.trajectories.empty()) throw DataError("deciles of empty dataset");
  if (dim < 0 || dim >= d.state_dim)
    throw DataError("decile dimension out of range");
  Vector values = pooled_component(d, dim);
  std::sort(values.begin(), values.end());
  std::array<double, 10> deciles;
  for (int k = 1; k <= 10; ++k)
    deciles[k - 1] = sample_quantile(values, k / 10.0);
  return deciles;
}

KnotGrid compute_knot_grid(const Dataset& d) {
  KnotGrid grid;
  grid.knots.resize(d.state_dim);
  for (int j = 0; j < d.state_dim; ++j) grid.knots[j] = compute_deciles(d, j);
  return grid;
}

FeatureMap::FeatureMap(KnotGrid grid, std::vector<BasisFunction> basis,
                       Vector centering_means)
    : grid_(std::move(grid)),
      basis_(std::move(basis)),
      centering_means_(std::move(centering_means)) {
  if (basis_.size() != centering_means_.size())
    throw ConfigError("feature map: basis/means length mismatch");
}

double FeatureMap::raw_value(std::size_t index,
                             std::span<const double> state) const {
  const BasisFunction& f = basis_[index];
  double v = atom_value(f.a, state, grid_);
  if (f.is_product) v *= atom_value(f.b, state, grid_);
  return v;
}

void FeatureMap::evaluate(std::span<const double> state,
                          std::span<double> out) const {
  if (static_cast<int>(state.size()) != state_dim())
    throw DataError("feature evaluation: state dimension mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    out[i] = raw_value(i, state) - centering_means_[i];
}

std::size_t candidate_basis_count(int state_dim) {
  const std::size_t atoms = 20u * static_cast<std::size_t>(state_dim);
  return atoms + atoms * (atoms - 1) / 2;
}

FeatureMap build_feature_map(const Dataset& d,
                             const FeatureBuildOptions& options,
                             FeatureBuildInfo* info) {
  if (d.trajectories.empty()) throw DataError("feature build: empty dataset");
  KnotGrid grid = compute_knot_grid(d);
  const int p1 = d.state_dim;
  const int n_atoms = 20 * p1;

  // Atom values for every training decision point, atom-major.
  std::size_t n_states = d.total_steps();
  std::vector<HingeAtom> atoms;
  atoms.reserve(n_atoms);
  for (std::int16_t j = 0; j < p1; ++j)
    for (std::int16_t k = 0; k < 10; ++k)
      for (int neg = 0; neg < 2; ++neg)
        atoms.push_back(HingeAtom{j, k, neg == 1});

  Matrix atom_values(n_atoms, n_states);
  {
    std::size_t col = 0;
    for (const auto& tr : d.trajectories)
      for (const auto& s : tr.steps) {
        for (int a = 0; a < n_atoms; ++a)
          atom_values(a, col) = atom_value(atoms[a], s.state, grid);
        ++col;
      }
  }

  const double max_zero_fraction = options.prune_threshold;
  std::vector<BasisFunction> kept;
  Vector means;
  FeatureBuildInfo stats;
  stats.candidates = candidate_basis_count(p1);

  // Deduplication by the exact value vector on training states.
  struct VecHash {
    std::size_t operator()(const Vector& v) const {
      std::size_t h = 1469598103934665603ull;
      for (double x : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof(bits));
        h = (h ^ bits) * 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_map<Vector, std::size_t, VecHash> seen;

  Vector values(n_states);
  auto consider = [&](const BasisFunction& f, const double* va,
                      const double* vb) {
    std::size_t zeros = 0;
    double total = 0.0;
    for (std::size_t s = 0; s < n_states; ++s) {
      const double v = vb ? va[s] * vb[s] : va[s];
      values[s] = v;
      if (v == 0.0) ++zeros;
      total += v;
    }
    if (static_cast<double>(zeros) >
        max_zero_fraction * static_cast<double>(n_states)) {
      ++stats.pruned;
      return;
    }
    auto [it, inserted] = seen.emplace(values, kept.size());
    if (!inserted) {
      ++stats.deduplicated;
      return;
    }
    kept.push_back(f);
    means.push_back(total / static_cast<double>(n_states));
  };

  for (int a = 0; a < n_atoms; ++a)
    consider(BasisFunction{atoms[a], {}, false}, atom_values.row(a), nullptr);
  for (int a = 0; a < n_atoms; ++a)
    for (int b = a + 1; b < n_atoms; ++b)
      consider(BasisFunction{atoms[a], atoms[b], true}, atom_values.row(a),
               atom_values.row(b));

  if (info) *info = stats;
  return FeatureMap(std::move(grid), std::move(kept), std::move(means));
}

std::string FeatureMap::to_json() const {
  json root;
  root["state_dim"] = state_dim();
  json knots = json::array();
  for (const auto& row : grid_.knots)
    knots.push_back(std::vector<double>(row.begin(), row.end()));
  root["knots"] = std::move(knots);
  json basis = json::array();
  for (const auto& f : basis_) {
    json jf;
    jf["a"] = {f.a.dim, f.a.knot, f.a.negative ? 1 : 0};
    if (f.is_product) jf["b"] = {f.b.dim, f.b.knot, f.b.negative ? 1 : 0};
    basis.push_back(std::move(jf));
  }
  root["basis"] = std::move(basis);
  root["centering_means"] = centering_means_;
  return root.dump(1);
}

FeatureMap FeatureMap::from_json(const std::string& text) {
  json root = json::parse(text);
  KnotGrid grid;
  for (const auto& row : root.at("knots")) {
    std::array<double, 10> k{};
    if (row.size() != 10) throw DataError("feature map: knot row length != 10");
    for (int i = 0; i < 10; ++i) k[i] = row[i].get<double>();
    grid.knots.push_back(k);
  }
  auto parse_atom = [](const json& j) {
    return HingeAtom{j.at(0).get<std::int16_t>(), j.at(1).get<std::int16_t>(),
                     j.at(2).get<int>() == 1};
  };
  std::vector<BasisFunction> basis;
  for (const auto& jf : root.at("basis")) {
    BasisFunction f;
    f.a = parse_atom(jf.at("a"));
    if (jf.contains("b")) {
      f.b = parse_atom(jf.at("b"));
      f.is_product = true;
    }
    basis.push_back(f);
  }
  Vector means = root.at("centering_means").get<Vector>();
  return FeatureMap(std::move(grid), std::move(basis), std::move(means));
}

void FeatureMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << to_json() << '\n';
}

FeatureMap FeatureMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

CenteredLinearFeatures CenteredLinearFeatures::fit(const Dataset& d) {
  if (d.trajectories.empty())
    throw DataError("feature build: empty dataset");
  Vector means(d.state_dim, 0.0);
  std::size_t count = 0;
  for (const auto& tr : d.trajectories)
    for (const auto& s : tr.steps) {
      for (int j = 0; j < d.state_dim; ++j) means[j] += s.state[j];
      ++count;
    }
  for (double& m : means) m /= static_cast<double>(count);
  return CenteredLinearFeatures(std::move(means));
}

void CenteredLinearFeatures::evaluate(std::span<const double> state,
                                      std::span<double> out) const {
  if (state.size() != means_.size())
    throw DataError("feature evaluation: state dimension mismatch");
  for (std::size_t j = 0; j < means_.size(); ++j)
    out[j] = state[j] - means_[j];
}

}  // namespace arac
