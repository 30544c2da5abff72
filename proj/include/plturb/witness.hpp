#pragma once

/// Certificate construction for the alternative "trap or double turbulence"
/// attached to a point c with f^n(c) <= c < f(c) (or its mirror image), the
/// periodic tower of even periods, the period-1-or-2 orbit classification,
/// and the one-level-down variant for a fixed point z and f(c) < c < z.
///
/// Everything is exact. Where the construction leaves a free choice the
/// tie-break is fixed so certificates are reproducible: smallest fixed point
/// z, largest b, largest v, and t, t~ at the midpoint between z0 and the
/// largest value the relevant iterate takes to the left.

#include "plturb/certificate.hpp"
#include "plturb/certify.hpp"
#include "plturb/plmap.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plturb {

inline std::optional<HypothesisA> check_hypothesis_A(const PLMap& f, const Rational& c, std::size_t n) {
  if (n < 2) throw std::invalid_argument("hypothesis A needs n >= 2");
  const Rational fc = f(c);
  const Rational fnc = iterate(f, c, n);
  if (fnc <= c && c < fc) return HypothesisA{c, n, Side::up};
  if (fc < c && c <= fnc) return HypothesisA{c, n, Side::down};
  return std::nullopt;
}

/// c is a period-2 point, so the chain f^n(c) <= c < f(c) closes on a
/// 2-cycle. The construction degenerates there (z0 = v) and neither
/// conclusion has to hold: f(x) = 1 - x with c = 1/4 has no trap and no
/// turbulence.
struct TwoCycleBoundary {
  Rational c;
  Rational partner;
};

struct WitnessResult {
  std::variant<TrapCertificate, DoubleTurbulenceCertificate, TwoCycleBoundary> outcome;
  WitnessTrace trace;

  bool is_trap() const { return outcome.index() == 0; }
  bool is_double() const { return outcome.index() == 1; }
  bool is_boundary() const { return outcome.index() == 2; }
};

namespace detail {

inline Rational reflect_point(const Rational& x, const Rational& axis) { return Rational(axis - x); }

inline std::optional<Rational> reflect_opt(const std::optional<Rational>& x, const Rational& axis) {
  if (!x) return std::nullopt;
  return reflect_point(*x, axis);
}

inline WitnessTrace reflect_trace(const WitnessTrace& t, const Rational& axis) {
  WitnessTrace r;
  r.side = t.side == Side::up ? Side::down : Side::up;
  for (const auto& x : t.X) r.X.push_back(reflect_point(x, axis));
  r.a = reflect_point(t.a, axis);
  r.b = reflect_point(t.b, axis);
  r.z = reflect_point(t.z, axis);
  r.v = reflect_point(t.v, axis);
  r.z0 = reflect_point(t.z0, axis);
  r.case_id = t.case_id;
  r.d = reflect_opt(t.d, axis);
  r.s = reflect_opt(t.s, axis);
  r.t = reflect_opt(t.t, axis);
  r.t_tilde = reflect_opt(t.t_tilde, axis);
  r.u1 = reflect_opt(t.u1, axis);
  r.e = reflect_opt(t.e, axis);
  r.u = reflect_opt(t.u, axis);
  r.w = reflect_opt(t.w, axis);
  r.r = reflect_opt(t.r, axis);
  for (const auto& e : t.tower) r.tower.push_back({e.n, reflect_point(e.u, axis), reflect_point(e.p, axis), e.period});
  return r;
}

// Reflected pair with J0 kept as the lower piece.
inline TurbulencePair reflect_pair(const TurbulencePair& p, const Rational& axis) {
  TurbulencePair r{p.map_power, reflect(p.J, axis), reflect(p.J1, axis), reflect(p.J0, axis)};
  return r;
}

inline DoubleTurbulenceCertificate reflect_double(const DoubleTurbulenceCertificate& c, const Rational& axis) {
  return {reflect_pair(c.right, axis), reflect_pair(c.left, axis)};
}

inline TrapCertificate reflect_trap(const TrapCertificate& c, const Rational& axis) {
  return {reflect_point(c.z, axis), reflect(c.K, axis), reflect_point(c.c, axis)};
}

[[noreturn]] inline void fail(const std::string& step, const WitnessTrace& trace) {
  throw ConstructionFailure("construction step failed: " + step, trace);
}

// Solutions strictly inside (lo, hi).
inline std::vector<Rational> interior_points(const SolutionSet& s, const Rational& lo, const Rational& hi) {
  std::vector<Rational> out;
  for (auto& x : s.representatives()) {
    if (lo < x && x < hi) out.push_back(x);
  }
  return out;
}

inline WitnessResult build_up(const PLMap& f, const HypothesisA& h) {
  WitnessTrace tr;
  tr.side = Side::up;
  const Rational& lo = f.lo();
  const PLMap f2 = compose(f, 2);

  Rational x = h.c;
  for (std::size_t i = 0; i < h.n; ++i) {
    tr.X.push_back(x);
    x = f(x);
  }
  std::sort(tr.X.begin(), tr.X.end());
  tr.X.erase(std::unique(tr.X.begin(), tr.X.end()), tr.X.end());

  std::optional<Rational> a;
  for (const auto& p : tr.X) {
    if (f(p) > p) a = p;
  }
  if (!a) fail("a = max { x in X : f(x) > x }", tr);
  tr.a = *a;
  const Rational fa = f(tr.a);

  std::optional<Rational> b;
  for (const auto& p : tr.X) {
    if (tr.a <= p && p <= fa && f(p) <= tr.a) b = p;
  }
  if (!b) fail("b in X n [a, f(a)] with f(b) <= a", tr);
  tr.b = *b;

  const SolutionSet zs = solve_fixed(f, {tr.a, tr.b});
  if (zs.empty()) fail("fixed point z in [a, b]", tr);
  tr.z = zs.min();

  const SolutionSet vs = solve_equal(f, tr.b, {tr.a, tr.z});
  if (vs.empty()) fail("v in [a, z] with f(v) = b", tr);
  tr.v = vs.max();

  const SolutionSet z0s = solve_fixed(f2, {tr.v, tr.z});
  if (z0s.empty()) fail("z0 = min { v <= x <= z : f^2(x) = x }", tr);
  tr.z0 = z0s.min();

  if (tr.z0 == tr.v) {
    if (f2(h.c) != h.c) fail("z0 = v without a 2-cycle through c", tr);
    return {TwoCycleBoundary{h.c, Rational(f(h.c))}, tr};
  }

  const SolutionSet ds = solve_equal(f2, tr.z0, {lo, tr.v});
  if (ds.empty()) {
    tr.case_id = 1;
    const Rational m = image(f2, {lo, tr.v}).hi;
    tr.t = midpoint(max_of(m, tr.v), tr.z0);
    TrapCertificate cert{tr.z, {lo, *tr.t}, h.c};
    if (auto v = verify_trap(f, cert); !v) fail("case 1 trap does not verify: " + v.detail, tr);
    return {cert, tr};
  }

  tr.d = ds.max();
  const Rational& d = *tr.d;
  tr.s = image(f2, {d, tr.z0}).lo;
  if (*tr.s > d) {
    tr.case_id = 2;
    const Rational m = image(f2, {*tr.s, tr.v}).hi;
    tr.t_tilde = midpoint(max_of(m, tr.v), tr.z0);
    TrapCertificate cert{tr.z, {*tr.s, *tr.t_tilde}, h.c};
    if (auto v = verify_trap(f, cert); !v) fail("case 2 trap does not verify: " + v.detail, tr);
    return {cert, tr};
  }

  tr.case_id = 3;
  const SolutionSet u1s = solve_equal(f2, d, {d, tr.z0});
  if (u1s.empty()) fail("u1 = min { d <= x <= z0 : f^2(x) = d }", tr);
  tr.u1 = u1s.min();
  const Rational& u1 = *tr.u1;
  DoubleTurbulenceCertificate cert;
  cert.left = {2, {d, tr.z0}, {d, u1}, {u1, tr.z0}};

  const Rational fd = f(d);
  const Rational fz0 = f(tr.z0);
  if (fd != fz0) {
    const Rational& plo = min_of(fd, fz0);
    const Rational& phi = max_of(fd, fz0);
    auto es = interior_points(solve_equal(f, d, {plo, phi}), plo, phi);
    if (es.empty()) fail("e in f([d, z0]) with f(e) = d", tr);
    tr.e = es.front();
    cert.right = {2, {plo, phi}, {plo, *tr.e}, {*tr.e, phi}};
  } else {
    const RatInterval img = image(f, {d, tr.z0});
    if (img.lo < fd) {
      tr.r = img.lo;
      auto us = solve_equal(f, d, {*tr.r, fd}).representatives();
      us.erase(std::remove_if(us.begin(), us.end(), [&](const Rational& q) { return !(q < fd); }), us.end());
      if (us.empty()) fail("u in [r, f(d)) with f(u) = d", tr);
      tr.u = us.back();
      auto ws = interior_points(solve_equal(f2, *tr.r, {*tr.u, fd}), *tr.u, fd);
      if (ws.empty()) fail("w in (u, f(d)) with f^2(w) = r", tr);
      tr.w = ws.front();
      cert.right = {2, {*tr.u, fd}, {*tr.u, *tr.w}, {*tr.w, fd}};
    } else {
      tr.r = img.hi;
      auto us = solve_equal(f, d, {fd, *tr.r}).representatives();
      us.erase(std::remove_if(us.begin(), us.end(), [&](const Rational& q) { return !(fd < q); }), us.end());
      if (us.empty()) fail("u in (f(d), r] with f(u) = d", tr);
      tr.u = us.front();
      auto ws = interior_points(solve_equal(f2, *tr.r, {fd, *tr.u}), fd, *tr.u);
      if (ws.empty()) fail("w in (f(d), u) with f^2(w) = r", tr);
      tr.w = ws.back();
      cert.right = {2, {fd, *tr.u}, {fd, *tr.w}, {*tr.w, *tr.u}};
    }
  }
  if (auto v = verify_double(f, cert); !v) fail("double turbulence does not verify: " + v.detail, tr);
  return {cert, tr};
}

}  // namespace detail

/// Runs the case analysis for a verified hypothesis and returns exactly one
/// certificate (or the 2-cycle boundary outcome), already verified.
/// Down-side hypotheses are handled on the reflected map and mapped back.
inline WitnessResult build_witness(const PLMap& f, const HypothesisA& h) {
  auto checked = check_hypothesis_A(f, h.c, h.n);
  if (!checked || checked->side != h.side) throw std::invalid_argument("hypothesis A does not hold for the given c, n, side");
  if (h.side == Side::up) return detail::build_up(f, h);

  const Rational axis = f.axis();
  const PLMap g = reflect(f);
  WitnessResult up = detail::build_up(g, {Rational(axis - h.c), h.n, Side::up});
  WitnessResult out;
  out.trace = detail::reflect_trace(up.trace, axis);
  if (auto* t = std::get_if<TrapCertificate>(&up.outcome)) {
    out.outcome = detail::reflect_trap(*t, axis);
  } else if (auto* d = std::get_if<DoubleTurbulenceCertificate>(&up.outcome)) {
    out.outcome = detail::reflect_double(*d, axis);
  } else {
    const auto& b = std::get<TwoCycleBoundary>(up.outcome);
    out.outcome = TwoCycleBoundary{Rational(axis - b.c), Rational(axis - b.partner)};
  }
  if (auto* t = std::get_if<TrapCertificate>(&out.outcome); t && !verify_trap(f, *t)) {
    throw ConstructionFailure("reflected trap does not verify", out.trace);
  }
  if (auto* d = std::get_if<DoubleTurbulenceCertificate>(&out.outcome); d && !verify_double(f, *d)) {
    throw ConstructionFailure("reflected double turbulence does not verify", out.trace);
  }
  return out;
}

/// Points p_1, ..., p_N of minimal periods 2, 4, ..., 2N nested towards d,
/// built from a Case-3 trace.
inline std::vector<TowerEntry> periodic_tower(const PLMap& f, const WitnessTrace& trace, std::size_t levels,
                                              std::size_t budget = kDefaultBreakpointBudget) {
  if (trace.case_id != 3 || !trace.d || !trace.u1) throw std::invalid_argument("periodic_tower needs a case-3 trace");
  if (levels == 0) return {};
  if (trace.side == Side::down) {
    const Rational axis = f.axis();
    WitnessTrace up = detail::reflect_trace(trace, axis);
    auto tower = periodic_tower(reflect(f), up, levels, budget);
    for (auto& e : tower) {
      e.u = axis - e.u;
      e.p = axis - e.p;
    }
    return tower;
  }

  const Rational& d = *trace.d;
  const Rational& u1 = *trace.u1;
  const Rational& z0 = trace.z0;
  std::vector<TowerEntry> out;
  Rational u = u1;
  Rational prev_p;
  for (std::size_t n = 1; n <= levels; ++n) {
    if (n > 1) {
      const PiecewiseLinear g = compose_on(f, 2 * (n - 1), {d, prev_p}, budget);
      const SolutionSet us = solve_equal(g, u1, {d, prev_p});
      if (us.empty()) detail::fail("u_" + std::to_string(n) + " = min { d <= x <= p_(n-1) : f^(2n-2)(x) = u1 }", trace);
      u = us.min();
    }
    const PiecewiseLinear h = compose_on(f, 2 * n, {d, u}, budget);
    auto ps = detail::interior_points(solve_fixed(h, {d, u}), d, u);
    if (ps.empty()) detail::fail("p_" + std::to_string(n) + " in (d, u_n) fixed by f^(2n)", trace);
    Rational p = ps.front();

    if (!has_minimal_period(f, p, 2 * n)) detail::fail("p_" + std::to_string(n) + " lacks minimal period 2n", trace);
    Rational y = p;
    for (std::size_t i = 0; i <= 2 * n; ++i) {
      const bool even = i % 2 == 0;
      if (even ? !(y < z0) : !(z0 < y)) detail::fail("orbit of p_" + std::to_string(n) + " does not alternate around z0", trace);
      y = f(y);
    }
    out.push_back({n, u, p, 2 * n});
    prev_p = std::move(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit classification

struct MonotoneLimit {
  Rational limit;
  std::size_t from_index = 0;
  bool increasing = true;
};

/// Orbit alternating around z_hat. `p` is the lower limit (ascending side),
/// `q` the upper one; both are exact when the orbit lands on a 2-cycle,
/// otherwise only enclosing bounds are known.
struct Spiral {
  Rational z_hat;
  std::optional<Rational> p, q;
  RatInterval p_bounds, q_bounds;
  std::vector<std::size_t> switch_indices;
  std::size_t computed = 0;
};

struct Inconclusive {
  std::size_t horizon = 0;
  std::size_t computed = 0;
  std::string reason;
};

using OrbitClassification = std::variant<MonotoneLimit, Spiral, Inconclusive>;

/// The orbit contains a point c satisfying hypothesis A; the caller should
/// build a witness instead.
class HypothesisAFound : public std::runtime_error {
 public:
  explicit HypothesisAFound(HypothesisA h)
      : std::runtime_error("orbit point " + to_string(h.c) + " satisfies hypothesis A with n = " + std::to_string(h.n)),
        h_(std::move(h)) {}
  const HypothesisA& hypothesis() const { return h_; }

 private:
  HypothesisA h_;
};

struct ClassifyOptions {
  std::size_t max_denominator_bits = 4096;
};

namespace detail {

// Increasing tail from x: [x, z*] with z* the first fixed point above x is
// mapped into itself and sits below every descending point seen so far.
inline std::optional<Rational> increasing_trap(const PLMap& f, const Rational& x,
                                               const std::optional<Rational>& min_desc) {
  const SolutionSet fx = solve_fixed(f, {x, f.hi()});
  if (fx.empty()) return std::nullopt;
  const Rational& zs = fx.min();
  if (min_desc && *min_desc < zs) return std::nullopt;
  if (!RatInterval(x, zs).contains(image(f, {x, zs}))) return std::nullopt;
  return zs;
}

inline std::optional<Rational> decreasing_trap(const PLMap& f, const Rational& x,
                                               const std::optional<Rational>& max_asc) {
  const SolutionSet fx = solve_fixed(f, {f.lo(), x});
  if (fx.empty()) return std::nullopt;
  const Rational& zs = fx.max();
  if (max_asc && zs < *max_asc) return std::nullopt;
  if (!RatInterval(zs, x).contains(image(f, {zs, x}))) return std::nullopt;
  return zs;
}

}  // namespace detail

/// Iterates x0 exactly, watching for a hypothesis-A point against running
/// extremes: a later iterate at or below an earlier ascending point (or at
/// or above an earlier descending point, two or more steps back) is a
/// trigger. Period-2 points are the boundary case and do not count.
inline OrbitClassification classify_orbit(const PLMap& f, const Rational& x0, std::size_t horizon,
                                          const ClassifyOptions& opt = {}) {
  if (!f.domain().contains(x0)) f(x0);
  std::vector<Rational> xs{x0};
  std::vector<int> label;  // +1 ascending, -1 descending, 0 fixed
  std::optional<Rational> max_asc, min_desc;
  std::vector<std::size_t> switches;

  auto on_two_cycle = [&](std::size_t i) { return xs.size() > i + 2 && xs[i + 2] == xs[i]; };

  for (std::size_t j = 1; j <= horizon; ++j) {
    xs.push_back(f(xs[j - 1]));
    const Rational& xj = xs[j];
    const Rational& xp = xs[j - 1];
    const int lab = sgn(Rational(xj - xp));
    label.push_back(lab);
    if (label.size() >= 2 && lab != 0 && label[label.size() - 2] != lab) switches.push_back(j - 1);

    // fold index j-2 into the running extremes, then test x_j against them
    if (j >= 2) {
      const std::size_t i = j - 2;
      if (label[i] > 0 && !on_two_cycle(i) && (!max_asc || *max_asc < xs[i])) max_asc = xs[i];
      if (label[i] < 0 && !on_two_cycle(i) && (!min_desc || xs[i] < *min_desc)) min_desc = xs[i];
      // the extremes decide whether a trigger exists; the reported one is the
      // earliest orbit index, skipping period-2 points
      if ((max_asc && xj <= *max_asc) || (min_desc && *min_desc <= xj)) {
        for (std::size_t k = 0; k + 2 <= j; ++k) {
          if (on_two_cycle(k)) continue;
          if (label[k] > 0 && xj <= xs[k]) throw HypothesisAFound({xs[k], j - k, Side::up});
          if (label[k] < 0 && xs[k] <= xj) throw HypothesisAFound({xs[k], j - k, Side::down});
        }
      }
    }

    if (lab == 0) {
      // x_{j-1} is fixed; the tail is monotone from the start of the last run
      std::size_t m = j - 1;
      const int run = j >= 2 ? label[j - 2] : 0;
      while (run != 0 && m >= 1 && label[m - 1] == run) --m;
      return MonotoneLimit{xp, m, run >= 0};
    }

    if (j >= 2 && xs[j] == xs[j - 2]) {
      // exact 2-cycle {x_{j-1}, x_j}
      Spiral s;
      s.p = min_of(xp, xj);
      s.q = max_of(xp, xj);
      const SolutionSet zh = solve_fixed(f, {*s.p, *s.q});
      if (zh.empty()) return Inconclusive{horizon, j, "2-cycle without an enclosed fixed point"};
      s.z_hat = zh.min();
      s.p_bounds = RatInterval::point(*s.p);
      s.q_bounds = RatInterval::point(*s.q);
      s.switch_indices = switches;
      s.computed = j;
      return s;
    }

    if (j >= 2 && lab == label[label.size() - 2]) {
      if (lab > 0) {
        if (auto zs = detail::increasing_trap(f, xj, min_desc)) {
          std::size_t m = j - 1;
          while (m > 0 && label[m - 1] > 0) --m;
          return MonotoneLimit{*zs, m, true};
        }
      } else {
        if (auto zs = detail::decreasing_trap(f, xj, max_asc)) {
          std::size_t m = j - 1;
          while (m > 0 && label[m - 1] < 0) --m;
          return MonotoneLimit{*zs, m, false};
        }
      }
    }

    if (denominator_bits(xj) > opt.max_denominator_bits) break;
  }

  const std::size_t computed = xs.size() - 1;
  // Spiral evidence: both kinds of points in the last quarter and at least two switches.
  const std::size_t tail_start = computed - computed / 4;
  bool tail_asc = false, tail_desc = false;
  for (std::size_t i = tail_start; i < label.size(); ++i) {
    tail_asc |= label[i] > 0;
    tail_desc |= label[i] < 0;
  }
  if (switches.size() >= 2 && tail_asc && tail_desc && max_asc && min_desc) {
    Rational lo_pt = *max_asc;
    Rational hi_pt = *min_desc;
    for (std::size_t i = 0; i < label.size(); ++i) {
      if (label[i] > 0 && lo_pt < xs[i]) lo_pt = xs[i];
      if (label[i] < 0 && xs[i] < hi_pt) hi_pt = xs[i];
    }
    const SolutionSet zh = solve_fixed(f, {lo_pt, hi_pt});
    auto inner = detail::interior_points(zh, lo_pt, hi_pt);
    if (!inner.empty()) {
      Spiral s;
      s.z_hat = inner.front();
      s.p_bounds = {lo_pt, hi_pt};
      s.q_bounds = {lo_pt, hi_pt};
      s.switch_indices = switches;
      s.computed = computed;
      return s;
    }
  }
  return Inconclusive{horizon, computed,
                      computed < horizon ? "denominator bound reached" : "no limit established within horizon"};
}

// ---------------------------------------------------------------------------
// Fixed point z with f(c) < c < z or z < c < f(c).

struct Theorem3Result {
  std::variant<TrapInterval, TurbulencePair> outcome;
  int case_id = 0;
  Rational z0;
  std::optional<Rational> d, s, t, u1;
};

namespace detail {

// Native orientation: f(c) < c < z.
inline Theorem3Result theorem3_left(const PLMap& f, const Rational& z, const Rational& c) {
  Theorem3Result res;
  WitnessTrace none;
  const Rational& lo = f.lo();
  const SolutionSet z0s = solve_fixed(f, {c, z});
  res.z0 = z0s.min();
  const Rational& z0 = res.z0;
  const SolutionSet ds = solve_equal(f, z0, {lo, c});
  if (ds.empty()) {
    res.case_id = 1;
    const Rational m = image(f, {lo, c}).hi;
    res.t = midpoint(max_of(m, c), z0);
    res.outcome = TrapInterval{{lo, *res.t}, z, c};
    return res;
  }
  res.d = ds.max();
  res.s = image(f, {*res.d, z0}).lo;
  if (*res.s > *res.d) {
    res.case_id = 2;
    const Rational m = image(f, {*res.s, c}).hi;
    res.t = midpoint(max_of(m, c), z0);
    res.outcome = TrapInterval{{*res.s, *res.t}, z, c};
    return res;
  }
  res.case_id = 3;
  const SolutionSet u1s = solve_equal(f, *res.d, {*res.d, z0});
  if (u1s.empty()) fail("u1 = min { d <= x <= z0 : f(x) = d }", none);
  res.u1 = u1s.min();
  res.outcome = TurbulencePair{1, {*res.d, z0}, {*res.d, *res.u1}, {*res.u1, z0}};
  return res;
}

}  // namespace detail

inline Theorem3Result theorem3_witness(const PLMap& f, const Rational& z, const Rational& c) {
  if (!f.domain().contains(z) || f(z) != z) throw std::invalid_argument("z must be a fixed point of f");
  if (!f.domain().contains(c)) throw std::invalid_argument("c outside the domain");
  const Rational fc = f(c);
  const bool left = fc < c && c < z;
  const bool right = z < c && c < fc;
  if (!left && !right) throw std::invalid_argument("need f(c) < c < z or z < c < f(c)");

  Theorem3Result res;
  if (left) {
    res = detail::theorem3_left(f, z, c);
  } else {
    const Rational axis = f.axis();
    res = detail::theorem3_left(reflect(f), Rational(axis - z), Rational(axis - c));
    res.z0 = axis - res.z0;
    res.d = detail::reflect_opt(res.d, axis);
    res.s = detail::reflect_opt(res.s, axis);
    res.t = detail::reflect_opt(res.t, axis);
    res.u1 = detail::reflect_opt(res.u1, axis);
    if (auto* j = std::get_if<TrapInterval>(&res.outcome)) {
      *j = TrapInterval{reflect(j->J, axis), z, c};
    } else {
      res.outcome = detail::reflect_pair(std::get<TurbulencePair>(res.outcome), axis);
    }
  }

  WitnessTrace none;
  if (auto* j = std::get_if<TrapInterval>(&res.outcome)) {
    if (auto v = verify_trap_interval(f, *j); !v) detail::fail("trap interval does not verify: " + v.detail, none);
  } else {
    if (auto v = verify_turbulence(f, std::get<TurbulencePair>(res.outcome)); !v) {
      detail::fail("turbulence pair does not verify: " + v.detail, none);
    }
    for (std::size_t p : {1, 2, 3}) {
      if (periodic_points(f, p).empty()) detail::fail("turbulent map without period " + std::to_string(p), none);
    }
  }
  return res;
}

}  // namespace plturb
