#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "w1fl/w1fl.hpp"

namespace w1fl::testing {

/// Solves and asserts the quadratic event ceiling, which must hold for
/// every path the suite produces.
template <Scalar T>
SolutionPath<T> solve_checked(const DualInstance<T>& dual) {
  auto path = solve_path(dual);
  EXPECT_LE(path.events.size(), event_ceiling_tight(dual.primal_size()));
  return path;
}

template <Scalar T>
SolutionPath<T> solve_checked(const Instance<T>& inst) {
  return solve_checked(to_dual(inst));
}

/// Reference minimizer of the primal problem by cyclic coordinate descent on
/// the string problem: each sweep replaces w_i by the average of its
/// neighbours clamped into its box. Slow but shares no code with the library.
inline std::vector<double> descent_solution(const std::vector<double>& y, const std::vector<double>& alpha,
                                            double gamma, int sweeps = 400000) {
  const std::size_t n = y.size();
  std::vector<double> yt(n + 1, 0.0), width(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) yt[k] = yt[k + 1] - y[k];
  for (std::size_t t = 0; t + 1 < n; ++t) width[t + 1] = gamma * alpha[t];
  std::vector<double> w = yt;
  for (int s = 0; s < sweeps; ++s) {
    double moved = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const double target = std::clamp(0.5 * (w[i - 1] + w[i + 1]), yt[i] - width[i], yt[i] + width[i]);
      moved = std::max(moved, std::abs(target - w[i]));
      w[i] = target;
    }
    if (moved < 1e-15) break;
  }
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = w[t + 1] - w[t];
  return x;
}

inline Rational q(const char* s) { return ScalarTraits<Rational>::parse(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

/// The small instance whose first two coordinates fuse, un-fuse and fuse again.
inline Instance<Rational> unfuse_instance() { return {qs({"0", "-1/2", "1/2", "1/2"}), qs({"1/50", "1/2", "1/2"})}; }

}  // namespace w1fl::testing
