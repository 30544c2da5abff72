#pragma once

// Test-only helpers: literal maps, random PL maps, and independent oracles
// that never call into the code paths they check.

#include "plturb/plmap.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace plturb::testing {

inline Rational R(const char* s) { return parse_rational(s); }

inline PLMap map_of(std::initializer_list<std::pair<const char*, const char*>> pts) {
  std::vector<Breakpoint> v;
  for (auto& [x, y] : pts) v.push_back({R(x), R(y)});
  return PLMap(std::move(v));
}

inline PLMap tent() { return map_of({{"0", "0"}, {"1/2", "1"}, {"1", "0"}}); }
inline PLMap identity() { return map_of({{"0", "0"}, {"1", "1"}}); }
inline PLMap flip() { return map_of({{"0", "1"}, {"1", "0"}}); }
inline PLMap halving() { return map_of({{"0", "0"}, {"1", "1/2"}}); }
inline PLMap contraction() { return map_of({{"0", "1/4"}, {"1", "3/4"}}); }

/// Random continuous PL self-map of [0, 1] with 2..max_points breakpoints
/// and coordinates of denominator at most max_den.
inline PLMap random_map(std::mt19937_64& rng, std::size_t max_points = 8, unsigned long max_den = 64) {
  auto rnd_rat = [&](bool interior) {
    for (;;) {
      unsigned long q = 1 + rng() % max_den;
      unsigned long p = rng() % (q + 1);
      Rational r(p, q);
      r.canonicalize();
      if (!interior || (sgn(r) > 0 && r < 1)) return r;
    }
  };
  const std::size_t n = 2 + rng() % (max_points - 1);
  std::set<Rational> xs{Rational(0), Rational(1)};
  while (xs.size() < n) xs.insert(rnd_rat(true));
  std::vector<Breakpoint> pts;
  for (const auto& x : xs) pts.push_back({x, rnd_rat(false)});
  return PLMap(std::move(pts));
}

inline Rational random_point(std::mt19937_64& rng, const PLMap& f, unsigned long max_den = 997) {
  unsigned long q = 1 + rng() % max_den;
  unsigned long p = rng() % (q + 1);
  Rational t(p, q);
  t.canonicalize();
  return Rational(f.lo() + (f.hi() - f.lo()) * t);
}

/// f^k(x) by walking the breakpoint list linearly, independent of
/// PiecewiseLinear::operator() and of compose.
inline Rational naive_iterate(const PLMap& f, Rational x, std::size_t k) {
  const auto& p = f.points();
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (p[i].x <= x && x <= p[i + 1].x) {
        x = p[i].y + (x - p[i].x) * (p[i + 1].y - p[i].y) / (p[i + 1].x - p[i].x);
        break;
      }
    }
  }
  return x;
}

/// Largest |slope| of f^power over the domain, bounded by the product of
/// f's largest slope.
inline Rational lipschitz_bound(const PLMap& f, int power) {
  Rational L = 0;
  const auto& p = f.points();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Rational s = abs_of(Rational((p[i + 1].y - p[i].y) / (p[i + 1].x - p[i].x)));
    if (L < s) L = s;
  }
  Rational out = 1;
  for (int i = 0; i < power; ++i) out *= L;
  return out;
}

}  // namespace plturb::testing
