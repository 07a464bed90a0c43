#pragma once

// Parameterized stochastic policies over a small discrete action set, the
// importance weights they induce against recorded behavior probabilities,
// and the stochasticity-constraint functional used by the actor.
//
// Binary case: pi(1|s) = sigmoid(theta . phi(s)); the sign convention makes
// larger theta . phi(s) favor treatment.  For K > 2 actions the policy is a
// softmax over per-action scores theta_a . phi(s) with action 0 pinned to
// score zero, which reduces to the logistic form at K = 2.  An
// availability-gated policy forces action 0 with probability one at
// unavailable points.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arac/dataset.hpp"
#include "arac/linalg.hpp"

namespace arac {

class RngStream;

// Policy features: selected state columns plus an optional leading
// intercept.
class PolicyFeatureMap {
 public:
  PolicyFeatureMap() = default;
  PolicyFeatureMap(std::vector<int> state_indices, bool intercept,
                   std::vector<std::string> names = {});

  // Resolves named columns against the dataset header.
  static PolicyFeatureMap from_columns(const Dataset& d,
                                       const std::vector<std::string>& columns,
                                       bool intercept);
  // Intercept plus the first `n_state` raw state components.
  static PolicyFeatureMap leading_states(int n_state, bool intercept = true);

  int q() const { return static_cast<int>(state_indices_.size()) +
                         (intercept_ ? 1 : 0); }
  bool intercept() const { return intercept_; }
  const std::vector<int>& state_indices() const { return state_indices_; }
  const std::vector<std::string>& names() const { return names_; }

  void evaluate(std::span<const double> state, std::span<double> out) const;
  Vector evaluate(std::span<const double> state) const;

 private:
  std::vector<int> state_indices_;
  bool intercept_ = true;
  std::vector<std::string> names_;  // one per feature, intercept first
};

class PolicyParams {
 public:
  PolicyParams() = default;
  // theta has length (K-1) * q, blocked by action 1..K-1.
  PolicyParams(Vector theta, PolicyFeatureMap features, bool gated,
               int n_actions = 2);

  // Degenerate policy putting probability one on a fixed action.
  static PolicyParams constant(int action, int n_actions = 2);

  bool is_constant() const { return constant_action_ >= 0; }
  int constant_action() const { return constant_action_; }
  int n_actions() const { return n_actions_; }
  bool gated_by_availability() const { return gated_; }
  const Vector& theta() const { return theta_; }
  const PolicyFeatureMap& features() const { return features_; }

  PolicyParams with_theta(Vector theta) const;

  std::string to_json() const;
  static PolicyParams from_json(const std::string& text);
  void save(const std::string& path) const;
  static PolicyParams load(const std::string& path);

 private:
  Vector theta_;
  PolicyFeatureMap features_;
  bool gated_ = false;
  int n_actions_ = 2;
  int constant_action_ = -1;
};

// P(action | state, availability); actions sum to one.
double action_probability(const PolicyParams& p, std::span<const double> state,
                          bool available, int action);

// All action probabilities at once.
void action_distribution(const PolicyParams& p, std::span<const double> state,
                         bool available, std::span<double> out);

int sample_action(const PolicyParams& p, std::span<const double> state,
                  bool available, RngStream& rng);

// rho = pi(A_t | S_t) / mu(A_t | S_t)
double importance_weight(const PolicyParams& p, const Step& step);

// Minimum over actions of the fraction of decision points (available points
// only) at which p0 <= pi(a|S_t) <= 1-p0.
double stochasticity_fraction(const PolicyParams& p, const Dataset& d,
                              double p0);

}  // namespace arac
