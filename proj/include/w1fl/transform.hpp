#pragma once

// Primal <-> string-problem data maps and the penalized <-> constrained
// parameter conversion along a solved path.

#include <cstddef>
#include <vector>

#include "w1fl/core.hpp"
#include "w1fl/types.hpp"

namespace w1fl {

/// ytilde_i = -sum_{t>=i} y_t, atilde_{i+1} = alpha_i, zero-width endpoints.
template <Scalar T>
DualInstance<T> to_dual(const Instance<T>& inst) {
  inst.validate();
  const std::size_t n = inst.size();
  DualInstance<T> d;
  d.ytilde.assign(n + 1, T(0));
  d.atilde.assign(n + 1, T(0));
  for (std::size_t k = n; k-- > 0;) d.ytilde[k] = T(d.ytilde[k + 1] - inst.y[k]);
  for (std::size_t t = 0; t + 1 < n; ++t) d.atilde[t + 1] = inst.alpha[t];
  return d;
}

template <Scalar T>
Instance<T> from_dual(const DualInstance<T>& dual) {
  dual.validate();
  const std::size_t n = dual.primal_size();
  Instance<T> inst;
  inst.y.reserve(n);
  for (std::size_t k = 0; k < n; ++k) inst.y.push_back(T(dual.ytilde[k + 1] - dual.ytilde[k]));
  inst.alpha.assign(dual.atilde.begin() + 1, dual.atilde.end() - 1);
  return inst;
}

template <Scalar T>
T weighted_tv(const Instance<T>& inst, const std::vector<T>& x) {
  if (x.size() != inst.size()) throw InvalidInput("weighted_tv: x has the wrong length");
  T tv(0);
  for (std::size_t t = 0; t + 1 < x.size(); ++t) tv += inst.alpha[t] * abs_value(T(x[t + 1] - x[t]));
  return tv;
}

/// gamma -> gamma~: the constraint level at which the constrained problem
/// has the same solution as the penalized one at `gamma`.
template <Scalar T>
T penalized_to_constrained(const SolutionPath<T>& path, const T& gamma) {
  if (gamma < T(0)) throw InvalidInput("gamma must be non-negative");
  return weighted_tv(from_dual(path.dual), eval_x(path, gamma));
}

/// gamma~ -> smallest gamma >= 0 with weighted_tv(x*(gamma)) <= gamma~.
///
/// The map gamma -> weighted_tv(x*(gamma)) is non-increasing and linear on
/// every interval of the path, so the answer is a linear solve inside the
/// first interval whose right end is feasible.
template <Scalar T>
T constrained_to_penalized(const SolutionPath<T>& path, const T& gamma_tilde) {
  if (gamma_tilde < T(0)) throw InvalidInput("gamma~ must be non-negative");
  const Instance<T> inst = from_dual(path.dual);
  auto tv_on = [&](std::size_t k, const T& g) { return weighted_tv(inst, x_from_w(eval_w_on_interval(path, k, g))); };

  if (!(gamma_tilde < tv_on(0, T(0)))) return T(0);

  for (std::size_t k = 0; k < path.events.size(); ++k) {
    const T lo = path.interval_start(k);
    const T hi = path.events[k].gamma;
    const T tv_hi = tv_on(k, hi);
    if (gamma_tilde < tv_hi) continue;
    const T tv_lo = tv_on(k, lo);
    if (!(gamma_tilde < tv_lo)) return lo;
    // tv_lo > gamma~ >= tv_hi, so the interval has positive length and slope.
    T g = lo + (tv_lo - gamma_tilde) * (hi - lo) / (tv_lo - tv_hi);
    if (hi < g) g = hi;
    if (g < lo) g = lo;
    return g;
  }
  // The terminal solution is constant across every positively weighted
  // pair, so its weighted TV is zero and the loop above always returns.
  return path.events.empty() ? T(0) : path.events.back().gamma;
}

}  // namespace w1fl
