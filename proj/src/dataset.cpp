#include "arac/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arac/errors.hpp"

namespace arac {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_int(std::string_view s, long& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void parse_fail(const std::string& id, long t,
                             const std::string& what) {
  std::ostringstream os;
  os << "individual " << id << ", time " << t << ": " << what;
  throw DataError(os.str());
}

}  // namespace

std::size_t Dataset::total_steps() const {
  std::size_t n = 0;
  for (const auto& tr : trajectories) n += tr.steps.size();
  return n;
}

int Dataset::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < state_names.size(); ++i)
    if (state_names[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> default_state_names(int state_dim) {
  std::vector<std::string> names;
  names.reserve(state_dim);
  for (int j = 1; j <= state_dim; ++j) names.push_back("s" + std::to_string(j));
  return names;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.violations == 0; });
}

const ValidationReport::Check* ValidationReport::find(
    const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.violations == 0 ? "pass" : "FAIL") << "  " << c.name << " ("
       << c.violations << "/" << c.checked << " violations)";
    if (c.violations > 0 && !c.first_failure.empty())
      os << " first: " << c.first_failure;
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_dataset(const Dataset& d) {
  ValidationReport report;
  auto& dim = report.checks.emplace_back();
  dim.name = "state dimension consistency";
  auto& len = report.checks.emplace_back();
  len.name = "trajectory length >= 2";
  auto& uniform = report.checks.emplace_back();
  uniform.name = "uniform trajectory length";
  auto& act = report.checks.emplace_back();
  act.name = "action within {0..K-1}";
  auto& bp = report.checks.emplace_back();
  bp.name = "behavior probability within (0,1)";
  auto& forced = report.checks.emplace_back();
  forced.name = "unavailable point forces action 0";

  auto note = [](ValidationReport::Check& c, bool bad, const std::string& at) {
    ++c.checked;
    if (bad) {
      ++c.violations;
      if (c.first_failure.empty()) c.first_failure = at;
    }
  };

  const std::size_t ref_len = d.steps_per_trajectory();
  for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
    const auto& tr = d.trajectories[i];
    const std::string id = i < d.ids.size() ? d.ids[i] : std::to_string(i);
    note(len, tr.steps.size() < 2, "individual " + id);
    note(uniform, tr.steps.size() != ref_len, "individual " + id);
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
      const Step& s = tr.steps[t];
      const std::string at = "individual " + id + ", time " + std::to_string(t);
      note(dim, static_cast<int>(s.state.size()) != d.state_dim, at);
      note(act, s.action < 0 || s.action >= d.n_actions, at);
      const bool bp_ok =
          s.available ? (s.behavior_prob > 0.0 && s.behavior_prob < 1.0)
                      : (s.behavior_prob > 0.0 && s.behavior_prob <= 1.0);
      note(bp, !std::isfinite(s.behavior_prob) || !bp_ok, at);
      note(forced, !s.available && s.action != 0, at);
    }
    if (tr.terminal_state)
      note(dim, static_cast<int>(tr.terminal_state->size()) != d.state_dim,
           "individual " + id + ", terminal state");
  }
  return report;
}

void require_valid(const Dataset& d) {
  const ValidationReport report = validate_dataset(d);
  if (!report.ok()) throw DataError("invalid dataset:\n" + report.summary());
}

FileFormat format_from_path(const std::string& path) {
  const auto pos = path.rfind('.');
  const std::string ext = pos == std::string::npos ? "" : path.substr(pos);
  if (ext == ".json") return FileFormat::Json;
  return FileFormat::Csv;
}

namespace {

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 7 || header[0] != "id" || header[1] != "t" ||
      header[2] != "avail" || header[3] != "action" || header[4] != "reward" ||
      header[5] != "bprob")
    throw DataError(path +
                    ": header must be id,t,avail,action,reward,bprob,s1,...");
  const int state_dim = static_cast<int>(header.size()) - 6;

  Dataset d;
  d.state_dim = state_dim;
  d.state_names.assign(header.begin() + 6, header.end());

  Trajectory* cur = nullptr;
  std::string cur_id;
  long expected_t = 0;
  bool cur_terminated = false;
  int max_action = 0;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size())
      throw DataError(path + ": row with " + std::to_string(f.size()) +
                      " fields, expected " + std::to_string(header.size()));
    const std::string& id = f[0];
    long t;
    if (!parse_int(f[1], t)) parse_fail(id, -1, "non-integer time '" + f[1] + "'");

    if (!cur || id != cur_id) {
      d.trajectories.emplace_back();
      d.ids.push_back(id);
      cur = &d.trajectories.back();
      cur_id = id;
      expected_t = 0;
      cur_terminated = false;
    }
    if (cur_terminated)
      parse_fail(id, t, "row after terminal state");
    if (t != expected_t)
      parse_fail(id, t, "expected time " + std::to_string(expected_t));
    ++expected_t;

    Vector state(state_dim);
    for (int j = 0; j < state_dim; ++j) {
      if (!parse_double(f[6 + j], state[j]))
        parse_fail(id, t, "non-numeric state value '" + f[6 + j] + "' in column " +
                              d.state_names[j]);
    }

    if (f[3].empty()) {  // terminal-state row
      if (!f[4].empty() || !f[5].empty())
        parse_fail(id, t, "terminal row must leave reward and bprob empty");
      cur->terminal_state = std::move(state);
      cur_terminated = true;
      continue;
    }

    Step s;
    s.state = std::move(state);
    long avail, action;
    if (!parse_int(f[2], avail) || (avail != 0 && avail != 1))
      parse_fail(id, t, "availability must be 0 or 1, got '" + f[2] + "'");
    s.available = avail == 1;
    if (!parse_int(f[3], action) || action < 0)
      parse_fail(id, t, "bad action '" + f[3] + "'");
    s.action = static_cast<int>(action);
    max_action = std::max(max_action, s.action);
    if (!parse_double(f[4], s.reward) || !std::isfinite(s.reward))
      parse_fail(id, t, "bad reward '" + f[4] + "'");
    if (!parse_double(f[5], s.behavior_prob))
      parse_fail(id, t, "bad behavior probability '" + f[5] + "'");
    const double bp = s.behavior_prob;
    const bool bp_ok = s.available ? (bp > 0.0 && bp < 1.0)
                                   : (bp > 0.0 && bp <= 1.0);
    if (!std::isfinite(bp) || !bp_ok)
      parse_fail(id, t, "behavior probability must lie strictly in (0,1)");
    cur->steps.push_back(std::move(s));
  }

  d.n_actions = std::max(2, max_action + 1);
  require_valid(d);
  return d;
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "id,t,avail,action,reward,bprob";
  for (const auto& name : d.state_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
    const auto& tr = d.trajectories[i];
    const std::string id = i < d.ids.size() ? d.ids[i] : std::to_string(i);
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
      const Step& s = tr.steps[t];
      out << id << ',' << t << ',' << (s.available ? 1 : 0) << ',' << s.action
          << ',' << format_double(s.reward) << ','
          << format_double(s.behavior_prob);
      for (double v : s.state) out << ',' << format_double(v);
      out << '\n';
    }
    if (tr.terminal_state) {
      out << id << ',' << tr.steps.size() << ",,,,";
      for (double v : *tr.terminal_state) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

Dataset load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }

  Dataset d;
  try {
    d.state_dim = root.at("state_dim").get<int>();
    d.n_actions = root.at("n_actions").get<int>();
    d.state_names = root.at("state_names").get<std::vector<std::string>>();
    for (const auto& jt : root.at("trajectories")) {
      d.ids.push_back(jt.at("id").get<std::string>());
      Trajectory tr;
      for (const auto& js : jt.at("steps")) {
        Step s;
        s.state = js.at("state").get<Vector>();
        s.available = js.at("avail").get<bool>();
        s.action = js.at("action").get<int>();
        s.reward = js.at("reward").get<double>();
        s.behavior_prob = js.at("bprob").get<double>();
        tr.steps.push_back(std::move(s));
      }
      if (jt.contains("terminal_state") && !jt["terminal_state"].is_null())
        tr.terminal_state = jt["terminal_state"].get<Vector>();
      d.trajectories.push_back(std::move(tr));
    }
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  require_valid(d);
  return d;
}

void save_json(const Dataset& d, const std::string& path) {
  json root;
  root["state_dim"] = d.state_dim;
  root["n_actions"] = d.n_actions;
  root["state_names"] = d.state_names;
  json jts = json::array();
  for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
    const auto& tr = d.trajectories[i];
    json jt;
    jt["id"] = i < d.ids.size() ? d.ids[i] : std::to_string(i);
    json steps = json::array();
    for (const Step& s : tr.steps) {
      steps.push_back({{"state", s.state},
                       {"avail", s.available},
                       {"action", s.action},
                       {"reward", s.reward},
                       {"bprob", s.behavior_prob}});
    }
    jt["steps"] = std::move(steps);
    if (tr.terminal_state) jt["terminal_state"] = *tr.terminal_state;
    jts.push_back(std::move(jt));
  }
  root["trajectories"] = std::move(jts);

  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << root.dump(1) << '\n';
}

}  // namespace

Dataset load_dataset(const std::string& path, FileFormat format) {
  return format == FileFormat::Csv ? load_csv(path) : load_json(path);
}

void save_dataset(const Dataset& d, const std::string& path,
                  FileFormat format) {
  if (format == FileFormat::Csv)
    save_csv(d, path);
  else
    save_json(d, path);
}

}  // namespace arac
