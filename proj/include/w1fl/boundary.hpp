#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "w1fl/scalar.hpp"

namespace w1fl {

/// The non-free set B of the string problem together with the boundary
/// signs, kept as a doubly linked list over 0-based point positions.
/// Positions 0 and n are always members.
template <Scalar T>
class BoundaryState {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Every point starts non-free with sign +1 (the state at gamma = 0).
  explicit BoundaryState(std::size_t points)
      : member_(points, true), sign_(points, 1), prev_(points), next_(points) {
    assert(points >= 2);
    for (std::size_t p = 0; p < points; ++p) {
      prev_[p] = p == 0 ? npos : p - 1;
      next_[p] = p + 1 == points ? npos : p + 1;
    }
    count_ = points;
  }

  std::size_t points() const { return member_.size(); }
  std::size_t boundary_size() const { return count_; }
  bool contains(std::size_t p) const { return member_[p]; }
  bool only_endpoints() const { return count_ == 2; }

  int sign(std::size_t p) const { return sign_[p]; }
  void set_sign(std::size_t p, int s) { sign_[p] = s; }

  /// B-predecessor / successor of a member.
  std::size_t prev(std::size_t p) const {
    assert(member_[p]);
    return prev_[p];
  }
  std::size_t next(std::size_t p) const {
    assert(member_[p]);
    return next_[p];
  }

  /// Nearest members on either side of any position (linear in the gap).
  std::pair<std::size_t, std::size_t> enclosing(std::size_t p) const {
    std::size_t l = p, r = p;
    while (l > 0 && !member_[--l]) {
    }
    while (r + 1 < member_.size() && !member_[++r]) {
    }
    return {l, r};
  }

  /// Inserts a free point between its known enclosing members.
  void insert(std::size_t p, std::size_t left, std::size_t right, int s) {
    assert(!member_[p] && member_[left] && member_[right] && next_[left] == right);
    member_[p] = true;
    sign_[p] = s;
    prev_[p] = left;
    next_[p] = right;
    next_[left] = p;
    prev_[right] = p;
    ++count_;
  }

  void remove(std::size_t p) {
    assert(member_[p] && p != 0 && p + 1 != member_.size());
    next_[prev_[p]] = next_[p];
    prev_[next_[p]] = prev_[p];
    member_[p] = false;
    --count_;
  }

  T gamma{};

 private:
  std::vector<bool> member_;
  std::vector<int> sign_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> next_;
  std::size_t count_ = 0;
};

}  // namespace w1fl
