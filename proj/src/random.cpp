#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "w1fl/generators.hpp"

namespace w1fl {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream `stream` of the generator family for `seed`.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t s = 0;
  for (std::uint64_t k = 0; k <= stream; ++k) s = splitmix64(state);
  return std::mt19937_64(s);
}

// Uniform on [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::vector<double> draw_normals(std::size_t n, std::uint64_t seed) {
  auto gen = make_stream(seed, 1);
  const double sd = std::sqrt(10.0);
  std::vector<double> y(n);
  for (auto& v : y) v = sd * standard_normal(gen);
  return y;
}

RandomDraws draw_random(std::size_t n, std::uint64_t seed) {
  RandomDraws d;
  auto weights = make_stream(seed, 0);
  d.alpha.resize(n == 0 ? 0 : n - 1);
  for (auto& a : d.alpha) a = uniform01(weights);
  d.y = draw_normals(n, seed);
  return d;
}

}  // namespace w1fl
