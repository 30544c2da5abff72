#pragma once

#include "plturb/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace plturb {

/// Closed interval [lo, hi] with rational endpoints; lo == hi is a point.
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() = default;
  RatInterval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
    if (hi < lo) throw std::invalid_argument("interval with lo > hi");
  }
  static RatInterval point(const Rational& x) { return {x, x}; }

  bool degenerate() const { return lo == hi; }
  Rational length() const { return Rational(hi - lo); }
  Rational mid() const { return midpoint(lo, hi); }

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend std::ostream& operator<<(std::ostream& os, const RatInterval& iv) {
    return os << '[' << iv.lo << ", " << iv.hi << ']';
  }
};

/// True when the two intervals share no more than a single point.
inline bool meet_in_at_most_one_point(const RatInterval& a, const RatInterval& b) {
  return a.hi <= b.lo || b.hi <= a.lo;
}

/// Reflection x -> axis - x, where axis = lo + hi of the ambient domain.
inline RatInterval reflect(const RatInterval& iv, const Rational& axis) {
  return {Rational(axis - iv.hi), Rational(axis - iv.lo)};
}

/// Sorted union of pairwise disjoint closed intervals.
///
/// Used as the exact answer set of an equation: every point of every element
/// solves it and nothing outside the union does.
class SolutionSet {
 public:
  SolutionSet() = default;

  /// Normalizes arbitrary pieces: sorts them and merges any that touch.
  explicit SolutionSet(std::vector<RatInterval> pieces) {
    std::sort(pieces.begin(), pieces.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    for (auto& p : pieces) {
      if (!parts_.empty() && p.lo <= parts_.back().hi) {
        if (parts_.back().hi < p.hi) parts_.back().hi = p.hi;
      } else {
        parts_.push_back(std::move(p));
      }
    }
  }

  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<RatInterval>& parts() const { return parts_; }
  auto begin() const { return parts_.begin(); }
  auto end() const { return parts_.end(); }

  const Rational& min() const { return parts_.front().lo; }
  const Rational& max() const { return parts_.back().hi; }

  bool contains(const Rational& x) const {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const RatInterval& p) { return p.contains(x); });
  }

  /// Finite sample of the set: each isolated point, and for each segment its
  /// two endpoints plus the midpoint.
  std::vector<Rational> representatives() const {
    std::vector<Rational> out;
    for (const auto& p : parts_) {
      out.push_back(p.lo);
      if (!p.degenerate()) {
        out.push_back(p.mid());
        out.push_back(p.hi);
      }
    }
    return out;
  }

  friend bool operator==(const SolutionSet& a, const SolutionSet& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<RatInterval> parts_;
};

}  // namespace plturb
