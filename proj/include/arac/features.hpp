#pragma once

// State feature construction for the linear differential-value
// approximation.  The production map is a fixed spline basis: hinge
// functions anchored at per-dimension sample deciles, all singletons plus
// all pairwise products, pruned of near-always-zero entries, deduplicated,
// and centered to empirical mean zero over the training decision points.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arac/dataset.hpp"
#include "arac/linalg.hpp"

namespace arac {

// Linear interpolation between order statistics at probability p (the
// common "type 7" convention).  `sorted` must be non-empty and ascending.
double sample_quantile(std::span<const double> sorted, double p);

// 10%,...,100% sample quantiles of state component `dim` pooled over every
// individual and decision point.
std::array<double, 10> compute_deciles(const Dataset& d, int dim);

// max(0, u)
inline double hinge(double u) { return u > 0.0 ? u : 0.0; }

struct KnotGrid {
  // knots[j][k]: k-th decile of state component j; non-decreasing within j.
  std::vector<std::array<double, 10>> knots;

  int state_dim() const { return static_cast<int>(knots.size()); }
};

KnotGrid compute_knot_grid(const Dataset& d);

// One hinge atom: (s_j - c_{j,k})+ or, when negative is set, (c_{j,k} - s_j)+.
struct HingeAtom {
  std::int16_t dim = 0;
  std::int16_t knot = 0;
  bool negative = false;

  bool operator==(const HingeAtom&) const = default;
};

// A singleton hinge or a product of two distinct hinges.
struct BasisFunction {
  HingeAtom a;
  HingeAtom b;
  bool is_product = false;

  bool operator==(const BasisFunction&) const = default;
};

// Interface consumed by the critic: any centered map from raw state to a
// feature vector.
class StateFeatures {
 public:
  virtual ~StateFeatures() = default;
  virtual int state_dim() const = 0;
  virtual int dim() const = 0;  // feature-vector length p
  virtual void evaluate(std::span<const double> state,
                        std::span<double> out) const = 0;

  Vector evaluate(std::span<const double> state) const {
    Vector out(dim());
    evaluate(state, out);
    return out;
  }
};

class FeatureMap : public StateFeatures {
 public:
  FeatureMap() = default;
  FeatureMap(KnotGrid grid, std::vector<BasisFunction> basis,
             Vector centering_means);

  int state_dim() const override { return grid_.state_dim(); }
  int dim() const override { return static_cast<int>(basis_.size()); }
  void evaluate(std::span<const double> state,
                std::span<double> out) const override;

  const KnotGrid& knot_grid() const { return grid_; }
  const std::vector<BasisFunction>& basis() const { return basis_; }
  const Vector& centering_means() const { return centering_means_; }

  // Raw (uncentered) basis value of one entry.
  double raw_value(std::size_t index, std::span<const double> state) const;

  std::string to_json() const;
  static FeatureMap from_json(const std::string& text);
  void save(const std::string& path) const;
  static FeatureMap load(const std::string& path);

 private:
  KnotGrid grid_;
  std::vector<BasisFunction> basis_;
  Vector centering_means_;
};

struct FeatureBuildOptions {
  // A basis function is dropped when it is zero on more than this fraction
  // of training states.
  double prune_threshold = 0.8;
};

struct FeatureBuildInfo {
  std::size_t candidates = 0;  // singletons + pairwise products, pre-pruning
  std::size_t pruned = 0;
  std::size_t deduplicated = 0;
};

// Number of candidate basis functions before pruning for a given state
// dimension: 20*p1 singleton hinges plus all unordered pairs.
std::size_t candidate_basis_count(int state_dim);

FeatureMap build_feature_map(const Dataset& d,
                             const FeatureBuildOptions& options = {},
                             FeatureBuildInfo* info = nullptr);

// Identity features shifted by their training mean; the exact
// differential-value basis for small tabular problems.
class CenteredLinearFeatures : public StateFeatures {
 public:
  explicit CenteredLinearFeatures(Vector means) : means_(std::move(means)) {}
  static CenteredLinearFeatures fit(const Dataset& d);

  int state_dim() const override { return static_cast<int>(means_.size()); }
  int dim() const override { return static_cast<int>(means_.size()); }
  void evaluate(std::span<const double> state,
                std::span<double> out) const override;

  const Vector& means() const { return means_; }

 private:
  Vector means_;
};

}  // namespace arac
