#pragma once

// Homotopy solver for the string problem
//
//   minimize sum_i (w_{i+1} - w_i)^2  s.t.  |w_i - ytilde_i| <= gamma * atilde_i,
//
// traced in gamma from 0 upwards. Between events every non-free point rides
// its box edge (ytilde_i + s_i atilde_i gamma) and every free point lies on
// the straight line through its nearest non-free neighbours. An event is
// either a free point reaching an edge (BecameNonFree) or the box multiplier
// of a non-free point reaching zero (BecameFree).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "w1fl/boundary.hpp"
#include "w1fl/core.hpp"
#include "w1fl/types.hpp"

namespace w1fl {

enum class CandidateKind : std::uint8_t { WillBecomeNonFree, WillBecomeFree };

/// A predicted boundary-set change for one point.
template <Scalar T>
struct Candidate {
  std::size_t index = 0;  // 1-based dual index
  CandidateKind kind = CandidateKind::WillBecomeNonFree;
  ExtScalar<T> gamma;
  int sign = 1;
  std::uint64_t version = 0;
  // 0-based enclosing non-free positions the prediction was computed from.
  std::size_t left = 0;
  std::size_t right = 0;
};

template <Scalar T>
struct LineCoeffs {
  T intercept;
  T slope;
};

namespace detail {

template <Scalar T>
LineCoeffs<T> line_through(const BoundaryState<T>& state, const DualInstance<T>& dual, std::size_t left,
                           std::size_t right, std::size_t p) {
  const T f = T(from_int<T>(static_cast<std::int64_t>(right - p)) / from_int<T>(static_cast<std::int64_t>(right - left)));
  const T fbar = T(T(1) - f);
  const T sl = state.sign(left) < 0 ? T(-dual.atilde[left]) : dual.atilde[left];
  const T sr = state.sign(right) < 0 ? T(-dual.atilde[right]) : dual.atilde[right];
  return {T(dual.ytilde[left] * f + dual.ytilde[right] * fbar), T(sl * f + sr * fbar)};
}

// Root of intercept + slope*gamma = ytilde_p + s*atilde_p*gamma, clamped to
// the current gamma (roundoff can place it marginally in the past).
template <Scalar T>
ExtScalar<T> crossing(const LineCoeffs<T>& line, const T& ytilde, const T& signed_width, const T& now) {
  if (ScalarTraits<T>::parallel(line.slope, signed_width)) return ExtScalar<T>::infinity();
  T root = T((ytilde - line.intercept) / (line.slope - signed_width));
  if (root < now) root = now;
  return ExtScalar<T>::of(std::move(root));
}

}  // namespace detail

/// Coefficients of the line a free point follows: the interpolation between
/// its enclosing non-free points. `i` is a 1-based dual index.
template <Scalar T>
LineCoeffs<T> interp_coeffs(const BoundaryState<T>& state, const DualInstance<T>& dual, std::size_t i) {
  const std::size_t p = i - 1;
  if (state.contains(p)) throw std::logic_error("interp_coeffs: point " + std::to_string(i) + " is not free");
  auto [l, r] = state.enclosing(p);
  return detail::line_through(state, dual, l, r, p);
}

/// Next gamma at which free point `i` reaches an edge of its box, arriving
/// from the inside (its line outruns the edge it meets).
template <Scalar T>
Candidate<T> candidate_hit_time(const BoundaryState<T>& state, const DualInstance<T>& dual, std::size_t i,
                                std::size_t left, std::size_t right) {
  const std::size_t p = i - 1;
  Candidate<T> c;
  c.index = i;
  c.kind = CandidateKind::WillBecomeNonFree;
  c.left = left;
  c.right = right;
  const auto line = detail::line_through(state, dual, left, right, p);
  const T& width = dual.atilde[p];
  for (int s : {-1, 1}) {
    const T signed_slope = s < 0 ? T(-line.slope) : line.slope;
    if (!(width < signed_slope)) continue;
    auto g = detail::crossing(line, dual.ytilde[p], s < 0 ? T(-width) : width, state.gamma);
    if (g < c.gamma) {
      c.gamma = std::move(g);
      c.sign = s;
    }
  }
  return c;
}

template <Scalar T>
Candidate<T> candidate_hit_time(const BoundaryState<T>& state, const DualInstance<T>& dual, std::size_t i) {
  auto [l, r] = state.enclosing(i - 1);
  return candidate_hit_time(state, dual, i, l, r);
}

/// Next gamma at which the box multiplier of non-free point `i` vanishes:
/// the line through its non-free neighbours crosses i's edge track moving
/// into the box.
template <Scalar T>
Candidate<T> candidate_release_time(const BoundaryState<T>& state, const DualInstance<T>& dual, std::size_t i) {
  const std::size_t p = i - 1;
  Candidate<T> c;
  c.index = i;
  c.kind = CandidateKind::WillBecomeFree;
  c.sign = state.sign(p);
  const T& width = dual.atilde[p];
  if (p == 0 || p + 1 == state.points() || ScalarTraits<T>::is_zero(width)) return c;
  c.left = state.prev(p);
  c.right = state.next(p);
  const auto line = detail::line_through(state, dual, c.left, c.right, p);
  const T signed_slope = c.sign < 0 ? T(-line.slope) : line.slope;
  if (!(signed_slope < width)) return c;
  c.gamma = detail::crossing(line, dual.ytilde[p], c.sign < 0 ? T(-width) : width, state.gamma);
  return c;
}

struct SolveOptions {
  /// Bound on consecutive events at one gamma before declaring a cycle.
  std::size_t burst_limit_factor = 8;
};

/// Traces the full path from gamma = 0 until no further boundary-set change
/// is possible. Changes that happen at gamma = 0 itself (points whose pair
/// is already equal in y) are absorbed into the initial state and not logged.
template <Scalar T>
SolutionPath<T> solve_path(const DualInstance<T>& dual, const SolveOptions& opts = {}) {
  dual.validate();
  using Traits = ScalarTraits<T>;
  const std::size_t points = dual.ytilde.size();

  SolutionPath<T> path;
  path.dual = dual;
  path.pieces.resize(points);

  BoundaryState<T> state(points);
  state.gamma = T(0);

  // Signs at gamma = 0+ follow the direction the neighbours pull each point.
  for (std::size_t p = 1; p + 1 < points; ++p) {
    const auto line = detail::line_through(state, dual, p - 1, p + 1, p);
    state.set_sign(p, line.intercept < dual.ytilde[p] ? -1 : 1);
  }

  struct Entry {
    T gamma;
    std::size_t pos;
    std::uint64_t version;
  };
  auto later = [](const Entry& a, const Entry& b) {
    if (a.gamma < b.gamma) return false;
    if (b.gamma < a.gamma) return true;
    return a.pos > b.pos;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  std::vector<std::uint64_t> version(points, 0);
  std::vector<Candidate<T>> slot(points);

  auto refresh = [&](std::size_t p) {
    if (p == 0 || p + 1 == points) return;
    ++version[p];
    Candidate<T> c;
    if (state.contains(p)) {
      c = candidate_release_time(state, dual, p + 1);
    } else {
      auto [l, r] = state.enclosing(p);
      c = candidate_hit_time(state, dual, p + 1, l, r);
    }
    c.version = version[p];
    if (c.gamma.finite) heap.push({c.gamma.value, p, c.version});
    slot[p] = std::move(c);
  };
  // Free points in (l, r) all share the enclosing pair (l, r).
  auto refresh_gap = [&](std::size_t l, std::size_t r) {
    for (std::size_t q = l + 1; q < r; ++q) {
      ++version[q];
      Candidate<T> c = candidate_hit_time(state, dual, q + 1, l, r);
      c.version = version[q];
      if (c.gamma.finite) heap.push({c.gamma.value, q, c.version});
      slot[q] = std::move(c);
    }
  };

  for (std::size_t p = 1; p + 1 < points; ++p) refresh(p);

  auto drop_stale = [&] {
    while (!heap.empty() && heap.top().version != version[heap.top().pos]) heap.pop();
  };

  // Among valid entries tied with the minimum, the smallest position wins.
  auto pop_next = [&]() -> std::size_t {
    Entry best = heap.top();
    heap.pop();
    if constexpr (!Traits::exact) {
      std::vector<Entry> tied;
      for (drop_stale(); !heap.empty() && Traits::tie(heap.top().gamma, best.gamma); drop_stale()) {
        tied.push_back(heap.top());
        heap.pop();
      }
      for (auto& e : tied) {
        if (e.pos < best.pos) std::swap(e, best);
      }
      for (auto& e : tied) heap.push(std::move(e));
    }
    return best.pos;
  };

  auto set_piece = [&](std::size_t q, std::size_t interval, LineCoeffs<T> line) {
    auto& list = path.pieces[q];
    if (!list.empty() && list.back().first_interval == interval) {
      list.back().intercept = std::move(line.intercept);
      list.back().slope = std::move(line.slope);
    } else {
      list.push_back({interval, std::move(line.intercept), std::move(line.slope)});
    }
  };
  auto edge_line = [&](std::size_t q) {
    return LineCoeffs<T>{dual.ytilde[q], state.sign(q) < 0 ? T(-dual.atilde[q]) : dual.atilde[q]};
  };

  T scale(1);
  for (const auto& v : dual.ytilde) scale = std::max(scale, abs_value(v));

  // Rejects a freshly written free segment that has left its box at gamma_c.
  auto check_gap = [&](std::size_t l, std::size_t r, const T& g) {
    if constexpr (!Traits::exact) {
      for (std::size_t q = l + 1; q < r; ++q) {
        const auto line = detail::line_through(state, dual, l, r, q);
        const double excess = std::abs(to_double(T(line.intercept + line.slope * g - dual.ytilde[q]))) -
                              to_double(T(dual.atilde[q] * g));
        if (excess > 1e-7 * to_double(T(scale + g * dual.atilde[q]))) {
          throw NumericalFailure("path lost feasibility at gamma=" + to_string(g) + " (point " + std::to_string(q + 1) +
                                 ", excess " + ScalarTraits<double>::to_string(excess) + ")");
        }
      }
    } else {
      (void)l, (void)r, (void)g;
    }
  };

  const std::size_t event_budget = 4 * points * points + 16;
  const std::size_t burst_limit = opts.burst_limit_factor * points + 16;
  std::size_t burst = 0;
  bool logging = false;
  T burst_gamma(0);

  auto begin_logging = [&] {
    logging = true;
    path.initial_signs.assign(points, 0);
    for (std::size_t l = 0; l + 1 < points; l = state.next(l)) {
      const std::size_t r = state.next(l);
      path.initial_signs[l] = state.sign(l);
      set_piece(l, 0, edge_line(l));
      for (std::size_t q = l + 1; q < r; ++q) set_piece(q, 0, detail::line_through(state, dual, l, r, q));
    }
    path.initial_signs[points - 1] = state.sign(points - 1);
    set_piece(points - 1, 0, edge_line(points - 1));
  };

  for (;;) {
    drop_stale();
    if (heap.empty()) break;
    if (!logging && !Traits::tie(heap.top().gamma, T(0))) begin_logging();

    const std::size_t p = pop_next();
    Candidate<T> cand = slot[p];
    T gamma_c = logging ? std::max(cand.gamma.value, state.gamma) : T(0);

    if (Traits::tie(gamma_c, burst_gamma)) {
      if (++burst > burst_limit) {
        throw NumericalFailure("no progress at gamma=" + to_string(gamma_c) + " after " + std::to_string(burst) +
                               " simultaneous events");
      }
    } else {
      burst = 0;
      burst_gamma = gamma_c;
    }
    state.gamma = gamma_c;

    std::size_t interval = 0;
    if (logging) {
      if (path.events.size() >= event_budget) throw NumericalFailure("event budget exceeded");
      path.events.push_back({gamma_c, p + 1,
                             cand.kind == CandidateKind::WillBecomeFree ? EventKind::BecameFree : EventKind::BecameNonFree,
                             cand.sign});
      interval = path.events.size();
    }

    if (cand.kind == CandidateKind::WillBecomeFree) {
      const std::size_t l = state.prev(p), r = state.next(p);
      state.remove(p);
      refresh_gap(l, r);
      refresh(l);
      refresh(r);
      if (logging) {
        for (std::size_t q = l + 1; q < r; ++q) set_piece(q, interval, detail::line_through(state, dual, l, r, q));
        check_gap(l, r, gamma_c);
      }
    } else {
      const std::size_t l = cand.left, r = cand.right;
      state.insert(p, l, r, cand.sign);
      refresh_gap(l, p);
      refresh_gap(p, r);
      refresh(l);
      refresh(p);
      refresh(r);
      if (logging) {
        set_piece(p, interval, edge_line(p));
        for (std::size_t q = l + 1; q < p; ++q) set_piece(q, interval, detail::line_through(state, dual, l, p, q));
        for (std::size_t q = p + 1; q < r; ++q) set_piece(q, interval, detail::line_through(state, dual, p, r, q));
        check_gap(l, p, gamma_c);
        check_gap(p, r, gamma_c);
      }
    }
  }
  if (!logging) begin_logging();
  return path;
}

/// Result of checking a path against the optimality conditions of the
/// string problem (and optionally against independent solvers).
struct VerifyReport {
  bool pass = true;
  double continuity = 0;   // jump of w* across an event
  double feasibility = 0;  // distance outside a box
  double alignment = 0;    // free point off the average of its neighbours
  double optimality = 0;   // box multiplier with the wrong sign
  double oracle = 0;       // sup-norm gap to oracle solutions of x*
  std::size_t samples_checked = 0;

  double worst() const { return std::max({continuity, feasibility, alignment, optimality, oracle}); }
};

/// Fixed-gamma solver returning x*(gamma), used as an external reference.
template <Scalar T>
using PrimalOracle = std::function<std::vector<T>(const T&)>;

template <Scalar T>
VerifyReport verify_path(const DualInstance<T>& dual, const SolutionPath<T>& path, std::size_t samples,
                         const std::vector<PrimalOracle<T>>& oracles = {}, double tolerance = 1e-9) {
  using Traits = ScalarTraits<T>;
  VerifyReport rep;
  if (samples == 0) samples = 1;
  const std::size_t points = dual.ytilde.size();
  const double tol = Traits::exact ? 0.0 : tolerance;
  double scale = 1;
  for (const auto& v : dual.ytilde) scale = std::max(scale, std::abs(to_double(v)));
  const double class_tol = Traits::exact ? 0.0 : tolerance * scale;

  auto bump = [](double& slot, double v) { slot = std::max(slot, v); };

  for (std::size_t p = 0; p < points; ++p) {
    const auto& list = path.pieces[p];
    for (std::size_t j = 1; j < list.size(); ++j) {
      const T& g = path.events[list[j].first_interval - 1].gamma;
      bump(rep.continuity, std::abs(to_double(T(list[j].at(g) - list[j - 1].at(g)))));
    }
  }

  auto check_state = [&](std::size_t k, const T& g) {
    const auto w = eval_w_on_interval(path, k, g);
    ++rep.samples_checked;
    for (std::size_t p = 0; p < points; ++p) {
      const T width = T(dual.atilde[p] * g);
      const T dev = T(w[p] - dual.ytilde[p]);
      const T slack = T(width - abs_value(dev));
      bump(rep.feasibility, std::max(0.0, -to_double(slack)));
      if (p == 0 || p + 1 == points) continue;
      const T pull = T((w[p - 1] + w[p + 1]) / T(2) - w[p]);
      if (to_double(slack) > class_tol && T(0) < slack) {
        bump(rep.alignment, std::abs(to_double(pull)));
      } else if (T(0) < width) {
        const double signed_pull = dev < T(0) ? -to_double(pull) : to_double(pull);
        bump(rep.optimality, std::max(0.0, -signed_pull));
      }
    }
  };

  const std::size_t intervals = path.interval_count();
  for (std::size_t k = 0; k < intervals; ++k) {
    const T lo = path.interval_start(k);
    T hi;
    if (k + 1 < intervals) {
      hi = path.events[k].gamma;
    } else {
      hi = path.events.empty() ? T(1) : T(lo * T(2) + T(1));
    }
    if (!(lo < hi)) continue;
    // The conditions are linear in gamma on an interval, so the two ends
    // certify it; interior samples guard the float backend.
    check_state(k, lo);
    check_state(k, hi);
    for (std::size_t j = 0; j < samples; ++j) {
      const T frac = T(from_int<T>(static_cast<std::int64_t>(2 * j + 1)) / from_int<T>(static_cast<std::int64_t>(2 * samples)));
      check_state(k, T(lo + (hi - lo) * frac));
    }
  }

  if (!oracles.empty()) {
    const T top = path.events.empty() ? T(1) : T(path.events.back().gamma * T(5) / T(4));
    for (std::size_t j = 0; j <= samples; ++j) {
      const T g = T(top * from_int<T>(static_cast<std::int64_t>(j)) / from_int<T>(static_cast<std::int64_t>(samples)));
      const auto x = eval_x(path, g);
      for (const auto& oracle : oracles) {
        const auto ref = oracle(g);
        for (std::size_t t = 0; t < x.size(); ++t) bump(rep.oracle, std::abs(to_double(T(x[t] - ref[t]))));
      }
    }
  }

  rep.pass = rep.worst() <= tol;
  return rep;
}

/// Loose programmatic form of the quadratic ceiling on events.
inline std::size_t event_ceiling(std::size_t n) { return 4 * (n + 1) * (n + 1); }

/// 8 * C(n+1, 2), the ceiling from the per-pair counting argument.
inline std::size_t event_ceiling_tight(std::size_t n) { return 4 * (n + 1) * n; }

}  // namespace w1fl
