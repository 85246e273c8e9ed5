#pragma once

// Queries over a solved path: evaluation, event and segment counts.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "w1fl/types.hpp"

namespace w1fl {

/// Index of the interval whose coefficients apply at `gamma`. At an event
/// gamma the later interval is chosen; by continuity both give the same value.
template <Scalar T>
std::size_t interval_at(const SolutionPath<T>& path, const T& gamma) {
  auto it = std::upper_bound(path.events.begin(), path.events.end(), gamma,
                             [](const T& g, const PathEvent<T>& e) { return g < e.gamma; });
  return static_cast<std::size_t>(it - path.events.begin());
}

/// The piece of coordinate `p` (0-based) that is active on interval `k`.
template <Scalar T>
const Piece<T>& piece_at(const SolutionPath<T>& path, std::size_t p, std::size_t k) {
  const auto& list = path.pieces[p];
  auto it = std::upper_bound(list.begin(), list.end(), k,
                             [](std::size_t kk, const Piece<T>& pc) { return kk < pc.first_interval; });
  return *(it - 1);
}

template <Scalar T>
std::vector<T> eval_w_on_interval(const SolutionPath<T>& path, std::size_t k, const T& gamma) {
  std::vector<T> w;
  w.reserve(path.pieces.size());
  for (std::size_t p = 0; p < path.pieces.size(); ++p) w.push_back(piece_at(path, p, k).at(gamma));
  return w;
}

/// w*(gamma) of the string problem, n+1 entries.
template <Scalar T>
std::vector<T> eval_w(const SolutionPath<T>& path, const T& gamma) {
  if (gamma < T(0)) throw InvalidInput("gamma must be non-negative");
  return eval_w_on_interval(path, interval_at(path, gamma), gamma);
}

/// Primal solution from dual positions: x_t = w_{t+1} - w_t.
template <Scalar T>
std::vector<T> x_from_w(const std::vector<T>& w) {
  std::vector<T> x;
  if (w.size() < 2) return x;
  x.reserve(w.size() - 1);
  for (std::size_t t = 0; t + 1 < w.size(); ++t) x.push_back(T(w[t + 1] - w[t]));
  return x;
}

/// x*(gamma) of the weighted fused lasso, n entries.
template <Scalar T>
std::vector<T> eval_x(const SolutionPath<T>& path, const T& gamma) {
  return x_from_w(eval_w(path, gamma));
}

struct EventCounts {
  std::size_t fuse = 0;
  std::size_t unfuse = 0;
  std::size_t total() const { return fuse + unfuse; }
};

template <Scalar T>
EventCounts event_counts(const SolutionPath<T>& path) {
  EventCounts c;
  for (const auto& e : path.events) {
    if (e.kind == EventKind::BecameFree) {
      ++c.fuse;
    } else {
      ++c.unfuse;
    }
  }
  return c;
}

/// Number of linear segments. Without `distinct_slopes` this is the number
/// of intervals between boundary-set changes. With it, zero-length intervals
/// are dropped and neighbouring intervals with identical coefficient tables
/// are merged, which counts the distinct linear pieces of x*(gamma).
template <Scalar T>
std::size_t segment_count(const SolutionPath<T>& path, bool distinct_slopes) {
  if (!distinct_slopes) return path.interval_count();

  const std::size_t points = path.pieces.size();
  const std::size_t intervals = path.interval_count();

  // Coordinates rewritten at the start of each interval.
  std::vector<std::vector<std::size_t>> changed(intervals);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 1; j < path.pieces[p].size(); ++j) changed[path.pieces[p][j].first_interval].push_back(p);
  }

  std::vector<std::size_t> kept(points, 0), current(points, 0);
  std::vector<bool> differs(points, false);
  std::vector<std::size_t> dirty;
  std::size_t differing = 0;
  std::size_t count = 1;

  auto same = [&](std::size_t p, std::size_t a, std::size_t b) {
    const auto& pa = path.pieces[p][a];
    const auto& pb = path.pieces[p][b];
    return pa.intercept == pb.intercept && pa.slope == pb.slope;
  };

  for (std::size_t k = 1; k < intervals; ++k) {
    for (std::size_t p : changed[k]) {
      ++current[p];
      bool d = !same(p, current[p], kept[p]);
      if (d && !differs[p]) {
        ++differing;
        dirty.push_back(p);
      } else if (!d && differs[p]) {
        --differing;
      }
      differs[p] = d;
    }
    bool zero_length = k + 1 < intervals && path.events[k].gamma == path.events[k - 1].gamma;
    if (zero_length || differing == 0) continue;
    ++count;
    for (std::size_t p : dirty) {
      kept[p] = current[p];
      differs[p] = false;
    }
    dirty.clear();
    differing = 0;
  }
  return count;
}

}  // namespace w1fl
