#include "arac/rng.hpp"

#include <cmath>

namespace arac {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t state = seed ^ (0xa0761d6478bd642fULL + id);
  std::uint64_t out = splitmix64(state);
  return out ? out : 0x9e3779b97f4a7c15ULL;
}

RngStream::RngStream(std::uint64_t seed) : engine_(seed) {}

RngStream RngStream::derive(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = seed;
  for (std::uint64_t id : path) key = mix_seed(key, id);
  return RngStream(key);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

double RngStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

std::size_t RngStream::index(std::size_t n) {
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

}  // namespace arac
