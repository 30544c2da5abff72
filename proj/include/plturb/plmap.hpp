#pragma once

/// Continuous piecewise-linear functions on a compact interval, stored as the
/// list of breakpoints of their graph, and the exact operations the rest of
/// the library is built from: evaluation, iteration, composition, interval
/// images and equation solving.

#include "plturb/interval.hpp"
#include "plturb/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace plturb {

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint& a, const Breakpoint& b) { return a.x == b.x && a.y == b.y; }
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a composition would exceed the caller's breakpoint budget.
class ComplexityLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBreakpointBudget = std::size_t{1} << 22;

/// Linear interpolation through breakpoints with strictly increasing x.
/// Values are unconstrained; see PLMap for self-maps.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::invalid_argument("a piecewise-linear function needs at least two breakpoints");
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      if (!(pts_[i - 1].x < pts_[i].x)) {
        throw std::invalid_argument("breakpoint x-values must be strictly increasing (index " +
                                    std::to_string(i) + ")");
      }
    }
  }

  const Rational& lo() const { return pts_.front().x; }
  const Rational& hi() const { return pts_.back().x; }
  RatInterval domain() const { return {lo(), hi()}; }
  const std::vector<Breakpoint>& points() const { return pts_; }
  std::size_t piece_count() const { return pts_.size() - 1; }

  Rational slope(std::size_t piece) const {
    const auto& a = pts_[piece];
    const auto& b = pts_[piece + 1];
    return Rational((b.y - a.y) / (b.x - a.x));
  }

  /// Index of a piece whose closed x-range contains x (the left one at a
  /// shared breakpoint, except at the far right end).
  std::size_t piece_of(const Rational& x) const {
    auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                               [](const Rational& v, const Breakpoint& b) { return v < b.x; });
    std::size_t idx = static_cast<std::size_t>(it - pts_.begin());
    if (idx == 0) return 0;
    if (idx >= pts_.size()) return pts_.size() - 2;
    return idx - 1;
  }

  Rational operator()(const Rational& x) const {
    if (x < lo() || hi() < x) {
      throw DomainError("point " + to_string(x) + " outside domain [" + to_string(lo()) + ", " +
                        to_string(hi()) + "]");
    }
    return value_in_piece(piece_of(x), x);
  }

  Rational value_in_piece(std::size_t piece, const Rational& x) const {
    const auto& a = pts_[piece];
    const auto& b = pts_[piece + 1];
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    Rational t = (x - a.x) / (b.x - a.x);
    return Rational(a.y + t * (b.y - a.y));
  }

  friend bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b) { return a.pts_ == b.pts_; }

 protected:
  std::vector<Breakpoint> pts_;
};

/// Continuous piecewise-linear self-map f : I -> I of I = [lo, hi].
class PLMap : public PiecewiseLinear {
 public:
  explicit PLMap(std::vector<Breakpoint> pts) : PiecewiseLinear(std::move(pts)) {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (pts_[i].y < lo() || hi() < pts_[i].y) {
        throw std::invalid_argument("breakpoint " + std::to_string(i) + " has value " + to_string(pts_[i].y) +
                                    " outside the domain; the map must send I into I");
      }
    }
  }

  static PLMap identity(const Rational& lo, const Rational& hi) { return PLMap({{lo, lo}, {hi, hi}}); }

  Rational axis() const { return Rational(lo() + hi()); }
};

inline Rational eval(const PiecewiseLinear& f, const Rational& x) { return f(x); }

inline Rational iterate(const PLMap& f, Rational x, std::size_t n) {
  if (x < f.lo() || f.hi() < x) f(x);  // raises the domain error
  for (std::size_t i = 0; i < n; ++i) x = f(x);
  return x;
}

/// All iterates x, f(x), ..., f^n(x).
inline std::vector<Rational> orbit(const PLMap& f, Rational x, std::size_t n) {
  std::vector<Rational> out;
  out.reserve(n + 1);
  out.push_back(x);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(out.back()));
  return out;
}

/// outer o inner, where inner takes values inside outer's domain. The result
/// has a breakpoint wherever inner does and wherever inner crosses one of
/// outer's breakpoint abscissae.
inline PiecewiseLinear compose(const PiecewiseLinear& outer, const PiecewiseLinear& inner,
                               std::size_t budget = kDefaultBreakpointBudget) {
  const auto& ob = outer.points();
  const auto& ip = inner.points();
  std::vector<Breakpoint> out;
  out.reserve(ip.size());
  auto push = [&](Rational x, Rational y) {
    if (out.size() >= budget) throw ComplexityLimit("composition exceeds breakpoint budget of " + std::to_string(budget));
    out.push_back({std::move(x), std::move(y)});
  };
  for (std::size_t i = 0; i + 1 < ip.size(); ++i) {
    const auto& a = ip[i];
    const auto& b = ip[i + 1];
    push(a.x, outer(a.y));
    if (a.y == b.y) continue;
    const Rational& ylo = min_of(a.y, b.y);
    const Rational& yhi = max_of(a.y, b.y);
    auto first = std::upper_bound(ob.begin(), ob.end(), ylo,
                                 [](const Rational& v, const Breakpoint& p) { return v < p.x; });
    auto last = std::lower_bound(ob.begin(), ob.end(), yhi,
                                 [](const Breakpoint& p, const Rational& v) { return p.x < v; });
    Rational dx = b.x - a.x;
    Rational dy = b.y - a.y;
    auto crossing = [&](const Breakpoint& p) {
      Rational x = a.x + (p.x - a.y) * dx / dy;
      push(std::move(x), p.y);
    };
    if (a.y < b.y) {
      for (auto it = first; it != last; ++it) crossing(*it);
    } else {
      for (auto it = last; it != first;) crossing(*--it);
    }
  }
  push(ip.back().x, outer(ip.back().y));
  return PiecewiseLinear(std::move(out));
}

/// f^k restricted to the subinterval iv; f^0 is the identity on iv.
inline PiecewiseLinear compose_on(const PLMap& f, std::size_t k, const RatInterval& iv,
                                  std::size_t budget = kDefaultBreakpointBudget) {
  if (iv.degenerate()) throw std::invalid_argument("compose_on needs a nondegenerate interval");
  if (!f.domain().contains(iv)) throw DomainError("compose_on interval outside the map's domain");
  PiecewiseLinear g({{iv.lo, iv.lo}, {iv.hi, iv.hi}});
  for (std::size_t i = 0; i < k; ++i) g = compose(f, g, budget);
  return g;
}

/// The k-fold composition f^k as a self-map of the same interval.
inline PLMap compose(const PLMap& f, std::size_t k, std::size_t budget = kDefaultBreakpointBudget) {
  if (k == 0) throw std::invalid_argument("compose needs k >= 1");
  PiecewiseLinear g = f;
  for (std::size_t i = 1; i < k; ++i) g = compose(f, g, budget);
  return PLMap(g.points());
}

/// Exact image g(iv): extremes over the endpoints and interior breakpoints.
inline RatInterval image(const PiecewiseLinear& g, const RatInterval& iv) {
  Rational mn = g(iv.lo);
  Rational mx = mn;
  auto note = [&](const Rational& y) {
    if (y < mn) mn = y;
    if (mx < y) mx = y;
  };
  note(g(iv.hi));
  const auto& p = g.points();
  auto it = std::upper_bound(p.begin(), p.end(), iv.lo,
                             [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  for (; it != p.end() && it->x < iv.hi; ++it) note(it->y);
  return {mn, mx};
}

namespace detail {

// Solves g(x) = m*x + c on iv, one affine piece at a time.
inline SolutionSet solve_affine(const PiecewiseLinear& g, const Rational& m, const Rational& c,
                                const RatInterval& iv) {
  if (!g.domain().contains(iv)) throw DomainError("solve interval outside the function's domain");
  std::vector<RatInterval> found;
  auto residual = [&](const Rational& x, const Rational& gx) { return Rational(gx - m * x - c); };
  if (iv.degenerate()) {
    if (sgn(residual(iv.lo, g(iv.lo))) == 0) found.push_back(iv);
    return SolutionSet(std::move(found));
  }
  std::size_t first = g.piece_of(iv.lo);
  const auto& p = g.points();
  for (std::size_t i = first; i + 1 < p.size() && p[i].x < iv.hi; ++i) {
    Rational a = max_of(p[i].x, iv.lo);
    Rational b = min_of(p[i + 1].x, iv.hi);
    if (!(a < b)) continue;
    Rational ra = residual(a, g.value_in_piece(i, a));
    Rational rb = residual(b, g.value_in_piece(i, b));
    if (sgn(ra) == 0 && sgn(rb) == 0) {
      found.emplace_back(a, b);
    } else if (sgn(ra) == 0) {
      found.push_back(RatInterval::point(a));
    } else if (sgn(rb) == 0) {
      found.push_back(RatInterval::point(b));
    } else if (sgn(ra) != sgn(rb)) {
      Rational x = a + ra * (b - a) / (ra - rb);
      found.push_back(RatInterval::point(x));
    }
  }
  return SolutionSet(std::move(found));
}

}  // namespace detail

/// { x in iv : g(x) = target }.
inline SolutionSet solve_equal(const PiecewiseLinear& g, const Rational& target, const RatInterval& iv) {
  return detail::solve_affine(g, Rational(0), target, iv);
}

/// { x in iv : g(x) = x }.
inline SolutionSet solve_fixed(const PiecewiseLinear& g, const RatInterval& iv) {
  return detail::solve_affine(g, Rational(1), Rational(0), iv);
}

inline bool has_minimal_period(const PLMap& f, const Rational& x, std::size_t p) {
  Rational y = x;
  for (std::size_t q = 1; q <= p; ++q) {
    y = f(y);
    if (y == x) return q == p;
  }
  return false;
}

/// Points of exact minimal period p, ascending. Segments of fixed points of
/// f^p contribute their endpoints and midpoint, each checked separately.
inline std::vector<Rational> periodic_points(const PLMap& f, std::size_t p,
                                             std::size_t budget = kDefaultBreakpointBudget) {
  if (p == 0) throw std::invalid_argument("period must be positive");
  PLMap g = compose(f, p, budget);
  std::vector<Rational> out;
  for (auto& x : solve_fixed(g, f.domain()).representatives()) {
    if (has_minimal_period(f, x, p)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Conjugate of f by the reflection x -> lo + hi - x.
inline PLMap reflect(const PLMap& f) {
  Rational axis = f.axis();
  std::vector<Breakpoint> pts;
  pts.reserve(f.points().size());
  for (auto it = f.points().rbegin(); it != f.points().rend(); ++it) {
    pts.push_back({Rational(axis - it->x), Rational(axis - it->y)});
  }
  return PLMap(std::move(pts));
}

}  // namespace plturb
