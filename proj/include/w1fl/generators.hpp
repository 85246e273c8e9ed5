#pragma once

// Instance factories and the structural checks for the adversarial family.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "w1fl/types.hpp"

namespace w1fl {

/// Random draws shared by both backends. Weights are U[0,1], observations
/// are normal with mean 0 and standard deviation sqrt(10).
struct RandomDraws {
  std::vector<double> y;
  std::vector<double> alpha;
};

/// Deterministic in (n, seed): two mt19937_64 streams (weights, then
/// observations) seeded through SplitMix64, 53-bit uniforms, Box-Muller normals.
RandomDraws draw_random(std::size_t n, std::uint64_t seed);

/// Observations only, for unit-weight instances.
std::vector<double> draw_normals(std::size_t n, std::uint64_t seed);

template <Scalar T>
Instance<T> gen_random(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("n must be at least 1");
  const RandomDraws d = draw_random(n, seed);
  Instance<T> inst;
  for (double v : d.y) inst.y.push_back(ScalarTraits<T>::from_double(v));
  for (double v : d.alpha) inst.alpha.push_back(ScalarTraits<T>::from_double(v));
  return inst;
}

template <Scalar T>
Instance<T> gen_1fl(std::vector<T> y) {
  if (y.empty()) throw InvalidInput("n must be at least 1");
  Instance<T> inst;
  inst.alpha.assign(y.size() - 1, T(1));
  inst.y = std::move(y);
  return inst;
}

/// Sequences of the adversarial construction, 1-based in the formulas and
/// stored at offset 0 here: q[k] holds q_{k+1}, g[k] holds g_{k+1}
/// (g_1 and g_2 are unused and zero).
template <Scalar T>
struct WorstCaseParams {
  std::size_t n = 0;
  std::vector<T> q;
  std::vector<T> g;
};

template <Scalar T>
WorstCaseParams<T> worst_case_params(std::size_t n) {
  if (n < 3) throw InvalidInput("worst-case family needs n >= 3");
  WorstCaseParams<T> p;
  p.n = n;
  p.q.assign(n, T(0));
  p.g.assign(n, T(0));
  p.q[0] = T(1);
  p.q[1] = T(2);
  p.g[2] = ScalarTraits<T>::from_ratio(1, 3);
  for (std::size_t k = 3; k < n; ++k) p.g[k] = T(T(2) * p.g[k - 1] + T(1));
  for (std::size_t k = 2; k < n; ++k) p.q[k] = T(T(2) * p.q[k - 1] - p.q[k - 2] + T(2) * p.g[k] + T(1));
  return p;
}

/// atilde_i = (i-1)^2 for i <= n, ytilde_i = (-1)^i q_i, zero at n+1.
template <Scalar T>
DualInstance<T> gen_worst_case(std::size_t n) {
  const auto p = worst_case_params<T>(n);
  DualInstance<T> d;
  d.ytilde.assign(n + 1, T(0));
  d.atilde.assign(n + 1, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    d.atilde[k] = from_int<T>(static_cast<std::int64_t>((i - 1) * (i - 1)));
    d.ytilde[k] = i % 2 == 0 ? p.q[k] : T(-p.q[k]);
  }
  return d;
}

struct ConditionResult {
  std::string name;
  bool pass = false;
};

struct ConditionReport {
  std::vector<ConditionResult> conditions;
  bool all_pass() const {
    for (const auto& c : conditions) {
      if (!c.pass) return false;
    }
    return true;
  }
};

/// The gamma-free sufficient conditions of the adversarial construction,
/// checked exactly. The gamma-dependent ones are checked on the solved path
/// by verify_alternating_epochs instead.
template <Scalar T>
ConditionReport check_worst_case_conditions(const DualInstance<T>& dual, const WorstCaseParams<T>& params) {
  const std::size_t n = params.n;
  const auto& a = dual.atilde;
  const auto& q = params.q;
  ConditionReport rep;
  auto add = [&](std::string name, bool ok) { rep.conditions.push_back({std::move(name), ok}); };

  if (dual.ytilde.size() != n + 1 || a.size() != n + 1 || q.size() != n || params.g.size() != n) {
    add("shape", false);
    return rep;
  }

  bool rec = q[0] == T(1) && q[1] == T(2) && params.g[2] == ScalarTraits<T>::from_ratio(1, 3);
  for (std::size_t k = 3; k < n; ++k) rec = rec && params.g[k] == T(T(2) * params.g[k - 1] + T(1));
  for (std::size_t k = 2; k < n; ++k) rec = rec && q[k] == T(T(2) * q[k - 1] - q[k - 2] + T(2) * params.g[k] + T(1));
  add("recursions", rec);

  bool convex = true;
  for (std::size_t k = 0; k + 2 < n; ++k) convex = convex && T(0) < T(a[k + 2] - T(2) * a[k + 1] + a[k]);
  add("atilde strictly convex", convex);

  bool increasing = true;
  for (std::size_t k = 0; k + 1 < n; ++k) increasing = increasing && a[k] < a[k + 1];
  add("atilde strictly increasing", increasing);

  add("q_2 > q_1", q[0] < q[1]);

  bool q_convex = true, q_increasing = true;
  for (std::size_t k = 0; k + 2 < n; ++k) q_convex = q_convex && T(0) < T(q[k + 2] - T(2) * q[k + 1] + q[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) q_increasing = q_increasing && q[k] < q[k + 1];
  add("q strictly convex", q_convex);
  add("q strictly increasing", q_increasing);

  bool pattern = dual.ytilde[n] == T(0) && a[n] == T(0);
  for (std::size_t k = 0; k < n; ++k) {
    const bool even = (k + 1) % 2 == 0;
    pattern = pattern && dual.ytilde[k] == (even ? q[k] : T(-q[k]));
  }
  add("sign pattern", pattern);
  return rep;
}

/// Replays the event log and counts epochs: successive states in which every
/// interior point 2..r-1 is non-free with the common sign (-1)^r, for
/// r = 3, 4, ... in order.
template <Scalar T>
std::size_t verify_alternating_epochs(const SolutionPath<T>& path) {
  const std::size_t points = path.pieces.size();
  if (points < 4) return 0;
  std::vector<int> signs = path.initial_signs;  // 0 = free

  std::size_t r = 3, epochs = 0;
  auto check = [&] {
    if (r > points - 1) return;
    const int want = r % 2 == 0 ? 1 : -1;
    for (std::size_t i = 2; i <= r - 1; ++i) {
      if (signs[i - 1] != want) return;
    }
    ++epochs;
    ++r;
  };

  check();
  for (std::size_t k = 0; k < path.events.size(); ++k) {
    const auto& e = path.events[k];
    signs[e.index - 1] = e.kind == EventKind::BecameFree ? 0 : e.sign;
    const bool burst_ends = k + 1 == path.events.size() || !(path.events[k + 1].gamma == e.gamma);
    if (burst_ends) check();
  }
  return epochs;
}

}  // namespace w1fl
