#pragma once

// Fixed-gamma reference solvers. Neither shares code with the homotopy
// solver: one works on the primal by dynamic programming, the other on the
// string problem by a primal active-set method.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "w1fl/types.hpp"

namespace w1fl {

/// Exact minimizer of the weighted fused lasso at one gamma.
///
/// Forward pass: the derivative of the partial objective in the current
/// variable is an increasing piecewise-linear function, kept as a deque of
/// knots (position, slope jump, offset jump) plus the coefficients of its two
/// outer pieces. Minimizing out x_t clips it to [-gamma*alpha_t,
/// gamma*alpha_t]; the clip points bound x_t given x_{t+1}. Backward pass
/// clamps through those bounds.
template <Scalar T>
std::vector<T> solve_fixed_gamma_dp(const Instance<T>& inst, const T& gamma) {
  inst.validate();
  if (gamma < T(0)) throw InvalidInput("gamma must be non-negative");
  const std::size_t n = inst.size();
  if (n == 1) return inst.y;

  struct Knot {
    T pos;
    T da;
    T db;
  };
  std::deque<Knot> knots;
  T a_left(1), b_left(-inst.y[0]);
  T a_right(1), b_right(-inst.y[0]);
  std::vector<T> lower(n - 1), upper(n - 1);

  auto near = [](const T& u, const T& v) {
    if constexpr (ScalarTraits<T>::exact) {
      return u == v;
    } else {
      return std::abs(u - v) <= 1e-13 * std::max({1.0, std::abs(u), std::abs(v)});
    }
  };

  // Leftmost point where the derivative reaches `level`; consumes the knots
  // it passes. Returns the root and the coefficients of its piece.
  auto scan_left = [&](const T& level, T& a, T& b) {
    a = a_left;
    b = b_left;
    while (!knots.empty()) {
      const Knot& k = knots.front();
      if (!(T(a * k.pos + b) < level)) break;
      a += k.da;
      b += k.db;
      knots.pop_front();
    }
    return T((level - b) / a);
  };

  for (std::size_t t = 0; t + 1 < n; ++t) {
    const T lam = T(gamma * inst.alpha[t]);
    T a, b;
    const T lo = scan_left(T(-lam), a, b);

    T c = a_right, d = b_right;
    while (!knots.empty()) {
      const Knot& k = knots.back();
      if (!(lam < T(c * k.pos + d))) break;
      c -= k.da;
      d -= k.db;
      knots.pop_back();
    }
    const T hi = T((lam - d) / c);

    // Clipped derivative: -lam left of lo, +lam right of hi.
    Knot left_knot{lo, a, T(b + lam)};
    Knot right_knot{hi, T(-c), T(lam - d)};
    if (!knots.empty() && near(knots.front().pos, lo)) {
      knots.front().da += left_knot.da;
      knots.front().db += left_knot.db;
    } else {
      knots.push_front(std::move(left_knot));
    }
    if (!knots.empty() && near(knots.back().pos, hi)) {
      knots.back().da += right_knot.da;
      knots.back().db += right_knot.db;
    } else {
      knots.push_back(std::move(right_knot));
    }

    const T& next_y = inst.y[t + 1];
    a_left = T(1);
    b_left = T(-lam - next_y);
    a_right = T(1);
    b_right = T(lam - next_y);
    lower[t] = lo;
    upper[t] = hi;
  }

  std::vector<T> x(n);
  {
    T a, b;
    x[n - 1] = scan_left(T(0), a, b);
  }
  for (std::size_t t = n - 1; t-- > 0;) {
    const T& nx = x[t + 1];
    x[t] = nx < lower[t] ? lower[t] : (upper[t] < nx ? upper[t] : nx);
  }
  return x;
}

/// Minimizer w* of the string problem at one gamma by a primal active-set
/// method. Equality-constrained subproblems are tridiagonal.
template <Scalar T>
std::vector<T> solve_fixed_gamma_qp(const DualInstance<T>& dual, const T& gamma) {
  dual.validate();
  if (gamma < T(0)) throw InvalidInput("gamma must be non-negative");
  using Traits = ScalarTraits<T>;
  const std::size_t m = dual.ytilde.size();

  enum class Status : std::uint8_t { Free, AtLower, AtUpper, Pinned };
  std::vector<T> lo(m), hi(m);
  std::vector<Status> status(m, Status::Free);
  for (std::size_t i = 0; i < m; ++i) {
    const T half = T(gamma * dual.atilde[i]);
    lo[i] = T(dual.ytilde[i] - half);
    hi[i] = T(dual.ytilde[i] + half);
    if (Traits::is_zero(half)) status[i] = Status::Pinned;
  }

  // Clamped straight line through the pinned points.
  std::vector<T> w(m);
  {
    std::size_t prev = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (status[i] != Status::Pinned) continue;
      for (std::size_t k = prev; k <= i; ++k) {
        const T f = T(from_int<T>(static_cast<std::int64_t>(k - prev)) / from_int<T>(static_cast<std::int64_t>(i - prev)));
        w[k] = T(dual.ytilde[prev] + (dual.ytilde[i] - dual.ytilde[prev]) * f);
      }
      prev = i;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (status[i] == Status::Pinned) {
        w[i] = dual.ytilde[i];
      } else if (w[i] < lo[i]) {
        w[i] = lo[i];
        status[i] = Status::AtLower;
      } else if (hi[i] < w[i]) {
        w[i] = hi[i];
        status[i] = Status::AtUpper;
      }
    }
  }

  double scale = 1;
  for (const auto& v : dual.ytilde) scale = std::max(scale, std::abs(to_double(v)));
  for (const auto& v : hi) scale = std::max(scale, std::abs(to_double(v)));
  const double step_tol = Traits::exact ? 0.0 : 1e-13 * scale;
  const double mult_tol = Traits::exact ? 0.0 : 1e-12 * scale;

  // Equality-constrained minimizer: fixed rows are identities, free rows are
  // 2 w_i - w_{i-1} - w_{i+1} = 0. Thomas algorithm.
  std::vector<T> cprime(m), dprime(m), sol(m);
  auto solve_eqp = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      const bool fixed = status[i] != Status::Free;
      const T sub = fixed ? T(0) : T(-1);
      const T sup = fixed ? T(0) : T(-1);
      const T dia = fixed ? T(1) : T(2);
      const T rhs = fixed ? w[i] : T(0);
      if (i == 0) {
        cprime[i] = T(sup / dia);
        dprime[i] = T(rhs / dia);
      } else {
        const T den = T(dia - sub * cprime[i - 1]);
        cprime[i] = T(sup / den);
        dprime[i] = T((rhs - sub * dprime[i - 1]) / den);
      }
    }
    sol[m - 1] = dprime[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) sol[i] = T(dprime[i] - cprime[i] * sol[i + 1]);
  };

  const std::size_t max_iter = 100 * m + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    solve_eqp();

    double dmax = 0;
    for (std::size_t i = 0; i < m; ++i) dmax = std::max(dmax, std::abs(to_double(T(sol[i] - w[i]))));
    const bool stationary = Traits::exact ? std::equal(sol.begin(), sol.end(), w.begin()) : dmax <= step_tol;

    if (stationary) {
      w = sol;
      // Multiplier of a bound point is proportional to the neighbours' pull.
      std::size_t drop = m;
      T worst(0);
      for (std::size_t i = 1; i + 1 < m; ++i) {
        if (status[i] != Status::AtLower && status[i] != Status::AtUpper) continue;
        T pull = T((w[i - 1] + w[i + 1]) / T(2) - w[i]);
        if (status[i] == Status::AtLower) pull = T(-pull);
        if (pull < T(0) && (Traits::exact || to_double(T(-pull)) > mult_tol) && (drop == m || pull < worst)) {
          worst = pull;
          drop = i;
        }
      }
      if (drop == m) return w;
      status[drop] = Status::Free;
      continue;
    }

    // Longest feasible step toward the subproblem solution.
    T step(1);
    std::size_t block = m;
    Status block_side = Status::Free;
    for (std::size_t i = 0; i < m; ++i) {
      if (status[i] != Status::Free) continue;
      const T d = T(sol[i] - w[i]);
      T t;
      Status side;
      if (T(0) < d && hi[i] < sol[i]) {
        t = T((hi[i] - w[i]) / d);
        side = Status::AtUpper;
      } else if (d < T(0) && sol[i] < lo[i]) {
        t = T((lo[i] - w[i]) / d);
        side = Status::AtLower;
      } else {
        continue;
      }
      if (t < step) {
        step = t;
        block = i;
        block_side = side;
      }
    }
    if (block == m) {
      w = sol;
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (status[i] == Status::Free) w[i] += step * T(sol[i] - w[i]);
    }
    status[block] = block_side;
    w[block] = block_side == Status::AtUpper ? hi[block] : lo[block];
  }
  throw NumericalFailure("active-set oracle hit its iteration limit");
}

namespace detail {

template <Scalar T>
bool slope_changes(const std::vector<T>& x0, const std::vector<T>& x1, const std::vector<T>& x2, const T& h01,
                   const T& h12) {
  double diff = 0, mag = 1;
  for (std::size_t t = 0; t < x0.size(); ++t) {
    const double s1 = to_double(T((x1[t] - x0[t]) / h01));
    const double s2 = to_double(T((x2[t] - x1[t]) / h12));
    diff = std::max(diff, std::abs(s2 - s1));
    mag = std::max({mag, std::abs(s1), std::abs(s2)});
  }
  return diff > 1e-7 * mag;
}

// Number of slope changes of x*(gamma) inside (a, b), at least one.
template <Scalar T>
std::size_t refine_kinks(const Instance<T>& inst, const T& a, const T& b, const T& min_width, int depth) {
  if (depth >= 40 || !(min_width < T(b - a))) return 1;
  constexpr int parts = 8;
  std::vector<T> gs;
  std::vector<std::vector<T>> xs;
  for (int j = 0; j <= parts; ++j) {
    gs.push_back(T(a + (b - a) * from_int<T>(j) / from_int<T>(parts)));
    xs.push_back(solve_fixed_gamma_dp(inst, gs.back()));
  }
  std::vector<std::pair<int, int>> groups;
  for (int j = 1; j < parts; ++j) {
    if (!slope_changes(xs[j - 1], xs[j], xs[j + 1], T(gs[j] - gs[j - 1]), T(gs[j + 1] - gs[j]))) continue;
    if (!groups.empty() && groups.back().second == j - 1) {
      groups.back().second = j;
    } else {
      groups.push_back({j, j});
    }
  }
  if (groups.empty()) return 1;
  std::size_t total = 0;
  for (auto [first, last] : groups) total += refine_kinks(inst, gs[first - 1], gs[last + 1], min_width, depth + 1);
  return total;
}

}  // namespace detail

/// Brute-force estimate of the number of linear segments of x*(gamma) on
/// [0, gamma_max]: slope changes between consecutive grid triples, refined
/// adaptively. A lower bound; breakpoints closer than the refinement floor
/// or with mutually cancelling slope changes merge.
template <Scalar T>
std::size_t sweep_segment_count(const Instance<T>& inst, const T& gamma_max, std::size_t grid) {
  if (grid < 3) throw InvalidInput("grid must have at least 3 points");
  if (inst.size() == 1) return 1;
  std::vector<T> gs;
  std::vector<std::vector<T>> xs;
  for (std::size_t k = 0; k < grid; ++k) {
    gs.push_back(T(gamma_max * from_int<T>(static_cast<std::int64_t>(k)) / from_int<T>(static_cast<std::int64_t>(grid - 1))));
    xs.push_back(solve_fixed_gamma_dp(inst, gs.back()));
  }
  const T min_width = T(gamma_max * ScalarTraits<T>::from_ratio(1, 1000000));
  std::size_t count = 1;
  std::size_t k = 1;
  while (k + 1 < grid) {
    if (!detail::slope_changes(xs[k - 1], xs[k], xs[k + 1], T(gs[k] - gs[k - 1]), T(gs[k + 1] - gs[k]))) {
      ++k;
      continue;
    }
    std::size_t last = k;
    while (last + 2 < grid &&
           detail::slope_changes(xs[last], xs[last + 1], xs[last + 2], T(gs[last + 1] - gs[last]), T(gs[last + 2] - gs[last + 1]))) {
      ++last;
    }
    count += detail::refine_kinks(inst, gs[k - 1], gs[last + 1], min_width, 0);
    k = last + 1;
  }
  return count;
}

template <Scalar T>
struct GammaInterval {
  T lo;
  T hi;
};

/// Maximal gamma-intervals within [0, gamma_max] on which x*_t and x*_{t+1}
/// (1-based t) agree to 1e-9, from a grid scan with bisection at the edges.
template <Scalar T>
std::vector<GammaInterval<T>> fused_interval_scan(const Instance<T>& inst, std::size_t t, const T& gamma_max,
                                                  std::size_t grid) {
  if (t < 1 || t + 1 > inst.size()) throw InvalidInput("pair index out of range");
  if (grid < 2) throw InvalidInput("grid must have at least 2 points");
  auto fused = [&](const T& g) {
    const auto x = solve_fixed_gamma_dp(inst, g);
    return std::abs(to_double(T(x[t] - x[t - 1]))) <= 1e-9;
  };
  auto edge = [&](T in, T out) {
    // `in` and `out` straddle a status change; shrink until tight.
    for (int it = 0; it < 60; ++it) {
      T mid = T((in + out) / T(2));
      if (fused(mid)) {
        in = mid;
      } else {
        out = mid;
      }
    }
    return in;
  };

  std::vector<GammaInterval<T>> result;
  T prev_g(0);
  bool prev_f = fused(prev_g);
  T start = prev_g;
  for (std::size_t k = 1; k < grid; ++k) {
    T g = T(gamma_max * from_int<T>(static_cast<std::int64_t>(k)) / from_int<T>(static_cast<std::int64_t>(grid - 1)));
    const bool f = fused(g);
    if (f && !prev_f) start = edge(g, prev_g);
    if (!f && prev_f) result.push_back({start, edge(prev_g, g)});
    prev_g = g;
    prev_f = f;
  }
  if (prev_f) result.push_back({start, gamma_max});
  return result;
}

}  // namespace w1fl
