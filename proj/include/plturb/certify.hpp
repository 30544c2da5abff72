#pragma once

/// Exact verification of every certificate kind and two-symbol itinerary
/// coding relative to a turbulence pair. Only exact primitives from
/// plmap.hpp are used here.

#include "plturb/certificate.hpp"
#include "plturb/plmap.hpp"

#include <optional>
#include <string>
#include <variant>

namespace plturb {

enum class Clause {
  none,
  bad_map_power,
  outside_domain,
  degenerate_interval,
  not_in_parent,      // J0 or J1 not inside J
  pieces_overlap,     // J0 and J1 share more than one point
  image_misses,       // g(Ji) does not cover Jk
  halves_overlap,     // K and L of a double certificate share more than one point
  left_pair,
  right_pair,
  c_not_in_interval,  // trap clause (i)
  image_not_inside,   // trap clause (ii), inclusion
  not_strict,         // trap clause (ii), strictness
  fixed_point_inside, // trap clause (iii)
  z_not_fixed,
  z_inside,
  same_side,          // trap clause (iv)
  not_proper,
  bad_period,
};

inline const char* to_string(Clause c) {
  switch (c) {
    case Clause::none: return "none";
    case Clause::bad_map_power: return "bad_map_power";
    case Clause::outside_domain: return "outside_domain";
    case Clause::degenerate_interval: return "degenerate_interval";
    case Clause::not_in_parent: return "not_in_parent";
    case Clause::pieces_overlap: return "pieces_overlap";
    case Clause::image_misses: return "image_misses";
    case Clause::halves_overlap: return "halves_overlap";
    case Clause::left_pair: return "left_pair";
    case Clause::right_pair: return "right_pair";
    case Clause::c_not_in_interval: return "c_not_in_interval";
    case Clause::image_not_inside: return "image_not_inside";
    case Clause::not_strict: return "not_strict";
    case Clause::fixed_point_inside: return "fixed_point_inside";
    case Clause::z_not_fixed: return "z_not_fixed";
    case Clause::z_inside: return "z_inside";
    case Clause::same_side: return "same_side";
    case Clause::not_proper: return "not_proper";
    case Clause::bad_period: return "bad_period";
  }
  return "unknown";
}

/// Outcome of a check. On failure, `clause` names the violated condition
/// and `endpoint` the offending coordinate when there is one.
struct Verdict {
  bool ok = true;
  Clause clause = Clause::none;
  std::optional<Rational> endpoint;
  std::string detail;
  Clause inner = Clause::none;  // set for left_pair / right_pair

  explicit operator bool() const { return ok; }

  static Verdict pass() { return {}; }
  static Verdict fail(Clause c, std::string detail, std::optional<Rational> at = std::nullopt) {
    Verdict v;
    v.ok = false;
    v.clause = c;
    v.detail = std::move(detail);
    v.endpoint = std::move(at);
    return v;
  }
};

namespace detail {

inline std::string show(const RatInterval& iv) { return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]"; }

inline Verdict check_covers(const RatInterval& img, const RatInterval& target, const std::string& what) {
  if (target.lo < img.lo) return Verdict::fail(Clause::image_misses, what + " = " + show(img) + " misses " + show(target), target.lo);
  if (img.hi < target.hi) return Verdict::fail(Clause::image_misses, what + " = " + show(img) + " misses " + show(target), target.hi);
  return Verdict::pass();
}

}  // namespace detail

inline Verdict verify_turbulence(const PLMap& f, const TurbulencePair& pair) {
  using detail::show;
  if (pair.map_power != 1 && pair.map_power != 2) {
    return Verdict::fail(Clause::bad_map_power, "map_power must be 1 or 2");
  }
  const RatInterval dom = f.domain();
  for (const RatInterval* iv : {&pair.J, &pair.J0, &pair.J1}) {
    if (!dom.contains(*iv)) return Verdict::fail(Clause::outside_domain, show(*iv) + " leaves the domain", iv->hi);
  }
  if (pair.J0.degenerate()) return Verdict::fail(Clause::degenerate_interval, "J0 is a single point", pair.J0.lo);
  if (pair.J1.degenerate()) return Verdict::fail(Clause::degenerate_interval, "J1 is a single point", pair.J1.lo);
  if (!pair.J.contains(pair.J0)) return Verdict::fail(Clause::not_in_parent, "J0 not inside J");
  if (!pair.J.contains(pair.J1)) return Verdict::fail(Clause::not_in_parent, "J1 not inside J");
  if (!meet_in_at_most_one_point(pair.J0, pair.J1)) {
    return Verdict::fail(Clause::pieces_overlap, "J0 and J1 share more than one point");
  }
  const PLMap g = pair.map_power == 1 ? f : compose(f, 2);
  const RatInterval i0 = image(g, pair.J0);
  const RatInterval i1 = image(g, pair.J1);
  for (auto [img, name] : {std::pair{&i0, "g(J0)"}, std::pair{&i1, "g(J1)"}}) {
    if (auto v = detail::check_covers(*img, pair.J0, name); !v) return v;
    if (auto v = detail::check_covers(*img, pair.J1, name); !v) return v;
  }
  return Verdict::pass();
}

inline Verdict verify_double(const PLMap& f, const DoubleTurbulenceCertificate& cert) {
  for (auto [pair, clause] : {std::pair{&cert.left, Clause::left_pair}, std::pair{&cert.right, Clause::right_pair}}) {
    if (pair->map_power != 2) return Verdict::fail(Clause::bad_map_power, "double turbulence is a statement about f^2");
    if (auto v = verify_turbulence(f, *pair); !v) {
      v.inner = v.clause;
      v.clause = clause;
      return v;
    }
  }
  if (!meet_in_at_most_one_point(cert.left.J, cert.right.J)) {
    return Verdict::fail(Clause::halves_overlap, "K and L share more than one point");
  }
  return Verdict::pass();
}

namespace detail {

/// Common part of both trap kinds: c in J, g(J) strictly inside J.
inline Verdict check_strict_trap(const PiecewiseLinear& g, const RatInterval& J, const Rational& c) {
  if (!J.contains(c)) return Verdict::fail(Clause::c_not_in_interval, "c not in the interval", c);
  const RatInterval img = image(g, J);
  if (img.lo < J.lo) return Verdict::fail(Clause::image_not_inside, "image " + show(img) + " leaves " + show(J), img.lo);
  if (J.hi < img.hi) return Verdict::fail(Clause::image_not_inside, "image " + show(img) + " leaves " + show(J), img.hi);
  if (img == J) return Verdict::fail(Clause::not_strict, "image equals the interval", J.lo);
  return Verdict::pass();
}

}  // namespace detail

inline Verdict verify_trap(const PLMap& f, const TrapCertificate& cert) {
  const RatInterval& K = cert.K;
  if (!f.domain().contains(K)) return Verdict::fail(Clause::outside_domain, "K leaves the domain");
  if (!f.domain().contains(cert.z)) return Verdict::fail(Clause::outside_domain, "z outside the domain", cert.z);
  if (f(cert.z) != cert.z) return Verdict::fail(Clause::z_not_fixed, "z is not a fixed point", cert.z);
  if (auto v = detail::check_strict_trap(compose(f, 2), K, cert.c); !v) return v;
  if (auto fixed = solve_fixed(f, K); !fixed.empty()) {
    return Verdict::fail(Clause::fixed_point_inside, "K contains a fixed point", fixed.min());
  }
  if (K.contains(cert.z)) return Verdict::fail(Clause::z_inside, "K contains z", cert.z);
  const RatInterval fK = image(f, K);
  const bool left_right = K.hi <= cert.z && cert.z <= fK.lo;
  const bool right_left = fK.hi <= cert.z && cert.z <= K.lo;
  if (!left_right && !right_left) {
    return Verdict::fail(Clause::same_side, "K and f(K) are not on opposite sides of z", cert.z);
  }
  return Verdict::pass();
}

inline Verdict verify_trap_interval(const PLMap& f, const TrapInterval& cert) {
  if (!f.domain().contains(cert.J)) return Verdict::fail(Clause::outside_domain, "J leaves the domain");
  if (cert.J == f.domain()) return Verdict::fail(Clause::not_proper, "J is the whole domain");
  if (!f.domain().contains(cert.z) || f(cert.z) != cert.z) {
    return Verdict::fail(Clause::z_not_fixed, "z is not a fixed point", cert.z);
  }
  if (auto v = detail::check_strict_trap(f, cert.J, cert.c); !v) return v;
  if (cert.J.contains(cert.z)) return Verdict::fail(Clause::z_inside, "J contains z", cert.z);
  return Verdict::pass();
}

inline Verdict verify(const PLMap& f, const Certificate& cert) {
  return std::visit(
      [&](const auto& c) -> Verdict {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TrapCertificate>) return verify_trap(f, c);
        else if constexpr (std::is_same_v<T, DoubleTurbulenceCertificate>) return verify_double(f, c);
        else if constexpr (std::is_same_v<T, TurbulencePair>) return verify_turbulence(f, c);
        else return verify_trap_interval(f, c);
      },
      cert);
}

/// Checks the claimed periodic tower: each p_n has minimal period 2n.
inline Verdict verify_tower(const PLMap& f, const std::vector<TowerEntry>& tower) {
  for (const auto& e : tower) {
    if (e.period != 2 * e.n || !f.domain().contains(e.p) || !has_minimal_period(f, e.p, e.period)) {
      return Verdict::fail(Clause::bad_period, "tower point does not have minimal period " + std::to_string(e.period), e.p);
    }
  }
  return Verdict::pass();
}

struct Itinerary {
  Rational start;
  std::string symbols;
  std::optional<std::size_t> escape_index;
};

/// Codes x, g(x), g^2(x), ... by membership in J0 (symbol 0, also used for
/// the shared endpoint) or J1 (symbol 1); stops at the first escape.
inline Itinerary itinerary(const PLMap& f, const TurbulencePair& pair, const Rational& x, std::size_t len) {
  const PLMap g = pair.map_power == 1 ? f : compose(f, static_cast<std::size_t>(pair.map_power));
  Itinerary it{x, {}, std::nullopt};
  Rational y = x;
  for (std::size_t k = 0; k < len; ++k) {
    if (pair.J0.contains(y)) {
      it.symbols.push_back('0');
    } else if (pair.J1.contains(y)) {
      it.symbols.push_back('1');
    } else {
      it.escape_index = k;
      break;
    }
    if (k + 1 < len) y = g(y);
  }
  return it;
}

}  // namespace plturb
