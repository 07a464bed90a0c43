#pragma once

// Reproducible random streams.  Streams are derived from a root seed plus a
// path of integer ids through SplitMix64 mixing, so parallel work items get
// independent, scheduling-order-free streams.  Distribution sampling is
// implemented here (not via <random> distributions, whose output is
// implementation-defined) so results are identical across standard
// libraries.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace arac {

// One SplitMix64 step; also used to fold stream ids into a seed.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Stream for (seed, path).  Same (seed, path) always yields the same
  // stream regardless of what other streams exist.
  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via the polar method (pairs cached).
  double normal();
  double normal(double mean, double sd);

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Deterministic Fisher-Yates shuffle (std::shuffle is
// implementation-defined).
template <typename T>
void shuffle(std::vector<T>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace arac
