#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "w1fl/scalar.hpp"

namespace w1fl {

/// Malformed or out-of-contract input data.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floating-point computation lost too much accuracy to continue, or an
/// iterative oracle hit its iteration cap.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted 1-D fused lasso data:
///   minimize 1/2 sum_t (x_t - y_t)^2 + gamma * sum_t alpha_t |x_{t+1} - x_t|.
/// `alpha` has one entry per consecutive pair, so alpha.size() + 1 == y.size().
template <Scalar T>
struct Instance {
  std::vector<T> y;
  std::vector<T> alpha;

  std::size_t size() const { return y.size(); }

  void validate() const {
    if (y.empty()) throw InvalidInput("instance must have at least one observation");
    if (alpha.size() + 1 != y.size()) {
      throw InvalidInput("alpha must have exactly n-1 entries (n = " + std::to_string(y.size()) +
                         ", got " + std::to_string(alpha.size()) + ")");
    }
    for (const T& a : alpha) {
      if (a < T(0)) throw InvalidInput("edge weights must be non-negative");
    }
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// The equivalent string problem: a chain w_1..w_{n+1} with boxes
/// |w_i - ytilde_i| <= gamma * atilde_i. Entry k of each vector stores the
/// point with 1-based index k+1. Both endpoints carry zero width.
template <Scalar T>
struct DualInstance {
  std::vector<T> ytilde;
  std::vector<T> atilde;

  /// Number of primal variables n (the chain has n+1 points).
  std::size_t primal_size() const { return ytilde.empty() ? 0 : ytilde.size() - 1; }

  void validate() const {
    if (ytilde.size() < 2 || atilde.size() != ytilde.size()) {
      throw InvalidInput("dual instance needs matching ytilde/atilde of length n+1 >= 2");
    }
    if (!(ytilde.back() == T(0))) throw InvalidInput("ytilde_{n+1} must be 0");
    if (!(atilde.front() == T(0)) || !(atilde.back() == T(0))) {
      throw InvalidInput("atilde_1 and atilde_{n+1} must be 0");
    }
    for (const T& a : atilde) {
      if (a < T(0)) throw InvalidInput("atilde must be non-negative");
    }
  }

  friend bool operator==(const DualInstance&, const DualInstance&) = default;
};

enum class EventKind : std::uint8_t {
  BecameFree,     // x_{i-1} and x_i fuse
  BecameNonFree,  // x_{i-1} and x_i un-fuse
};

inline const char* event_kind_name(EventKind k) {
  return k == EventKind::BecameFree ? "fuse" : "unfuse";
}

/// One change of the non-free set. `index` is the 1-based dual index
/// i in {2..n}; the event concerns the primal pair (x_{i-1}, x_i).
template <Scalar T>
struct PathEvent {
  T gamma;
  std::size_t index = 0;
  EventKind kind = EventKind::BecameFree;
  int sign = 1;

  friend bool operator==(const PathEvent&, const PathEvent&) = default;
};

/// Linear coefficients of one dual coordinate, valid from interval
/// `first_interval` until the next piece of the same coordinate.
template <Scalar T>
struct Piece {
  std::size_t first_interval = 0;
  T intercept;
  T slope;

  T at(const T& gamma) const { return T(intercept + slope * gamma); }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Piecewise-linear solution path of the string problem.
///
/// Interval 0 is [0, events[0].gamma]; interval k >= 1 starts at
/// events[k-1].gamma and ends at events[k].gamma (the last one is
/// unbounded). Coefficients are stored per coordinate as change lists, so
/// an event only costs the size of the neighbourhood it rewrites.
template <Scalar T>
struct SolutionPath {
  DualInstance<T> dual;
  std::vector<PathEvent<T>> events;
  std::vector<std::vector<Piece<T>>> pieces;
  /// Boundary sign of each point on interval 0 (0 for free points).
  std::vector<int> initial_signs;

  std::size_t primal_size() const { return dual.primal_size(); }
  std::size_t interval_count() const { return events.size() + 1; }
  T interval_start(std::size_t k) const { return k == 0 ? T(0) : events[k - 1].gamma; }
};

}  // namespace w1fl
