#pragma once

// Trajectory data model and batch ingestion.  A dataset holds one trajectory
// per individual: a sequence of decision points (state, availability,
// action, reward, behavior probability) plus an optional terminal state
// observed after the last decision.  Datasets are immutable after
// construction and safe for concurrent reads.

#include <optional>
#include <string>
#include <vector>

#include "arac/linalg.hpp"

namespace arac {

struct Step {
  Vector state;
  bool available = true;
  int action = 0;
  double reward = 0.0;
  // Probability the behavior policy assigned to the recorded action.  Must
  // lie strictly inside (0,1) at available points; a forced action at an
  // unavailable point may carry probability exactly 1.
  double behavior_prob = 0.5;
};

struct Trajectory {
  std::vector<Step> steps;
  std::optional<Vector> terminal_state;

  // Number of transitions usable for value estimation: every decision point
  // when the terminal state was recorded, all but the last otherwise.
  std::size_t n_transitions() const {
    return terminal_state ? steps.size() : steps.size() - 1;
  }
};

struct Dataset {
  std::vector<Trajectory> trajectories;
  int state_dim = 0;
  int n_actions = 2;
  std::vector<std::string> state_names;  // defaults to s1..sP
  std::vector<std::string> ids;          // one per trajectory

  std::size_t n() const { return trajectories.size(); }
  std::size_t steps_per_trajectory() const {
    return trajectories.empty() ? 0 : trajectories.front().steps.size();
  }
  std::size_t total_steps() const;

  // Index of a named state column, or -1.
  int column_index(const std::string& name) const;
};

std::vector<std::string> default_state_names(int state_dim);

struct ValidationReport {
  struct Check {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::string first_failure;  // empty when clean
  };
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(const std::string& name) const;
  std::string summary() const;
};

// Report-only scan of every dataset invariant: state dimension consistency,
// minimum length, uniform lengths, action range, behavior probability
// bounds, and the forced no-treatment action at unavailable points.
ValidationReport validate_dataset(const Dataset& d);

// Throws DataError when the report is not clean.
void require_valid(const Dataset& d);

enum class FileFormat { Csv, Json };

FileFormat format_from_path(const std::string& path);

// CSV layout: header `id,t,avail,action,reward,bprob,s1,...,sP`, one row per
// decision point in time order; an optional row with empty action and
// t = T+1 carries the terminal state.  JSON mirrors the same fields as an
// array of trajectory objects.  Both are locale-independent and round-trip
// doubles exactly.
Dataset load_dataset(const std::string& path, FileFormat format);
void save_dataset(const Dataset& d, const std::string& path,
                  FileFormat format);

}  // namespace arac
