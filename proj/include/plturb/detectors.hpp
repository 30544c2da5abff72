#pragma once

/// Detectors for the sufficient conditions that force period-doubling
/// turbulence: odd periods (exact), density of chain recurrence through an
/// epsilon-transition graph on a uniform cell partition (exact graph,
/// finite resolution), and orbit-sampling heuristics for omega-limit sets,
/// Li-Yorke pairs and oscillating consecutive gaps.
///
/// The sampling detectors iterate in precision-capped arithmetic: an iterate
/// whose denominator exceeds `PrecisionCap::max_bits` is rounded to the
/// nearest multiple of 1/P, P = 2^255 - 19, and clamped into the domain.
/// Orbits with small denominators stay exact. An odd prime grid keeps
/// expanding maps such as the tent map from collapsing onto 0, which any
/// dyadic grid does. Results from these detectors are evidence only.

#include "plturb/plmap.hpp"
#include "plturb/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace plturb {

// ---------------------------------------------------------------------------
// Condition (1): odd periods

struct OddPeriodHit {
  Rational c;
  std::size_t n = 0;
};

/// Scans n = 3, 5, ..., max_odd. Among the points of minimal period n the
/// orbit with the smallest denominator (then smallest value) is chosen, and
/// c is its least point, which satisfies f^n(c) = c < f(c).
inline std::optional<OddPeriodHit> detect_odd_period(const PLMap& f, std::size_t max_odd,
                                                     std::size_t budget = kDefaultBreakpointBudget) {
  if (max_odd < 3 || max_odd % 2 == 0) throw std::invalid_argument("max_odd must be odd and at least 3");
  for (std::size_t n = 3; n <= max_odd; n += 2) {
    auto pts = periodic_points(f, n, budget);
    if (pts.empty()) continue;
    auto simplest = std::min_element(pts.begin(), pts.end(), [](const Rational& a, const Rational& b) {
      int cmp = mpz_cmp(a.get_den_mpz_t(), b.get_den_mpz_t());
      return cmp != 0 ? cmp < 0 : a < b;
    });
    Rational c = *simplest;
    Rational y = c;
    for (std::size_t i = 0; i < n; ++i) {
      y = f(y);
      if (y < c) c = y;
    }
    if (!check_hypothesis_A(f, c, n)) {
      throw std::logic_error("least point of an odd orbit fails hypothesis A");
    }
    return OddPeriodHit{c, n};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Condition (2): chain recurrence

/// Directed graph on `resolution` equal cells; i -> j iff cell j meets the
/// open epsilon-neighbourhood of f(cell i).
struct ChainGraph {
  std::size_t resolution = 0;
  Rational epsilon;
  Rational lo;
  Rational width;
  std::vector<std::vector<std::uint32_t>> adj;

  RatInterval cell(std::size_t i) const {
    Rational a = lo + width * static_cast<unsigned long>(i);
    Rational b = a + width;
    return {a, b};
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adj) n += a.size();
    return n;
  }
  bool has_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(adj[i].begin(), adj[i].end(), static_cast<std::uint32_t>(j));
  }
};

namespace detail {

inline long floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.fits_slong_p() ? r.get_si() : (sgn(r) < 0 ? -1 : static_cast<long>(1) << 40);
}

inline long ceil_of(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.fits_slong_p() ? r.get_si() : (sgn(r) < 0 ? -1 : static_cast<long>(1) << 40);
}

inline std::size_t cell_index(const Rational& x, const Rational& lo, const Rational& width, std::size_t resolution) {
  long k = floor_of(Rational((x - lo) / width));
  if (k < 0) k = 0;
  if (k >= static_cast<long>(resolution)) k = static_cast<long>(resolution) - 1;
  return static_cast<std::size_t>(k);
}

}  // namespace detail

inline ChainGraph chain_graph(const PLMap& f, std::size_t resolution, const Rational& epsilon) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  ChainGraph g;
  g.resolution = resolution;
  g.epsilon = epsilon;
  g.lo = f.lo();
  g.width = Rational(f.hi() - f.lo()) / static_cast<unsigned long>(resolution);
  g.adj.resize(resolution);
  const long last = static_cast<long>(resolution) - 1;
  for (std::size_t i = 0; i < resolution; ++i) {
    const RatInterval img = image(f, g.cell(i));
    // a_j < M + eps  and  b_j > m - eps
    long jmin = detail::floor_of(Rational((img.lo - epsilon - g.lo) / g.width));
    long jmax = detail::ceil_of(Rational((img.hi + epsilon - g.lo) / g.width)) - 1;
    jmin = std::max(jmin, 0L);
    jmax = std::min(jmax, last);
    for (long j = jmin; j <= jmax; ++j) g.adj[i].push_back(static_cast<std::uint32_t>(j));
  }
  return g;
}

struct SccDecomposition {
  std::vector<std::uint32_t> component;  // node -> component id
  std::size_t count = 0;
};

/// Tarjan's algorithm, iterative so deep graphs do not exhaust the stack.
inline SccDecomposition strongly_connected_components(const ChainGraph& g) {
  const std::size_t n = g.adj.size();
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  SccDecomposition out;
  out.component.assign(n, kUnset);
  std::uint32_t next = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // node, next edge position

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < g.adj[v].size()) {
        const std::uint32_t w = g.adj[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.component[w] = static_cast<std::uint32_t>(out.count);
        } while (w != done);
        ++out.count;
      }
    }
  }
  return out;
}

/// Cells lying on a directed cycle: members of an SCC with two or more
/// nodes, or carrying a self-loop.
inline std::vector<std::size_t> recurrent_cells(const ChainGraph& g, const SccDecomposition& scc) {
  std::vector<std::size_t> size(scc.count, 0);
  for (auto c : scc.component) ++size[c];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    if (size[scc.component[i]] > 1 || g.has_edge(i, i)) out.push_back(i);
  }
  return out;
}

struct ChainRecurrenceReport {
  Rational epsilon;
  std::size_t resolution = 0;
  std::vector<std::size_t> recurrent_cells;
  std::size_t scc_count = 0;
  bool dense_at_resolution = false;
  bool dense_at_double = false;
  bool dense_flag = false;
  std::optional<Rational> witness_a;

  bool is_recurrent(std::size_t cell) const {
    return std::binary_search(recurrent_cells.begin(), recurrent_cells.end(), cell);
  }
};

/// dense_flag requires every cell to be recurrent both at `resolution` and
/// after one doubling of it.
inline ChainRecurrenceReport chain_recurrent(const PLMap& f, std::size_t resolution, const Rational& epsilon) {
  ChainRecurrenceReport rep;
  rep.epsilon = epsilon;
  rep.resolution = resolution;
  const ChainGraph g = chain_graph(f, resolution, epsilon);
  const SccDecomposition scc = strongly_connected_components(g);
  rep.scc_count = scc.count;
  rep.recurrent_cells = recurrent_cells(g, scc);
  rep.dense_at_resolution = rep.recurrent_cells.size() == resolution;
  if (rep.dense_at_resolution) {
    const ChainGraph g2 = chain_graph(f, 2 * resolution, epsilon);
    rep.dense_at_double = recurrent_cells(g2, strongly_connected_components(g2)).size() == 2 * resolution;
  }
  rep.dense_flag = rep.dense_at_resolution && rep.dense_at_double;

  const PLMap f2 = compose(f, 2);
  for (const auto& bp : f.points()) {
    if (f2(bp.x) != bp.x) {
      rep.witness_a = bp.x;
      return rep;
    }
  }
  for (std::size_t i = 0; i < resolution; ++i) {
    Rational mid = g.cell(i).mid();
    if (f2(mid) != mid) {
      rep.witness_a = mid;
      break;
    }
  }
  return rep;
}

/// For a chain-recurrent x0 with f(x0) < x0, a point c with
/// f(c) < c < f^2(c) = x0; for f(x0) > x0, one with f(c) > c > f^2(c) = x0.
/// Either way (c, 2) satisfies hypothesis A. Only direct solutions of
/// f^2(c) = x0 are examined; none is returned when none qualifies.
inline std::optional<Rational> chain_point_to_c(const PLMap& f, const Rational& x0,
                                                const ChainRecurrenceReport* report = nullptr) {
  if (!f.domain().contains(x0)) return std::nullopt;
  const Rational fx0 = f(x0);
  if (fx0 == x0) return std::nullopt;
  if (report && report->resolution > 0) {
    const Rational width = Rational(f.hi() - f.lo()) / static_cast<unsigned long>(report->resolution);
    if (!report->is_recurrent(detail::cell_index(x0, f.lo(), width, report->resolution))) return std::nullopt;
  }
  const PLMap f2 = compose(f, 2);
  for (const auto& c : solve_equal(f2, x0, f.domain()).representatives()) {
    const Rational fc = f(c);
    if (fx0 < x0 ? (fc < c && c < x0) : (fc > c && c > x0)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Precision-capped iteration

struct PrecisionCap {
  std::size_t max_bits = 256;
};

inline const mpz_class& grid_denominator() {
  static const mpz_class p = (mpz_class(1) << 255) - 19;
  return p;
}

inline Rational capped_step(const PLMap& f, const Rational& x, const PrecisionCap& cap) {
  Rational y = f(x);
  if (denominator_bits(y) <= cap.max_bits) return y;
  const mpz_class& P = grid_denominator();
  mpz_class scaled_num = y.get_num() * P * 2 + y.get_den();
  mpz_class twice_den = y.get_den() * 2;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), scaled_num.get_mpz_t(), twice_den.get_mpz_t());  // round(y * P)
  Rational r(k, P);
  r.canonicalize();
  if (r < f.lo()) r = f.lo();
  if (f.hi() < r) r = f.hi();
  return r;
}

// ---------------------------------------------------------------------------
// Condition (3): omega-limit sets

struct OmegaEstimate {
  Rational seed;
  std::size_t burn_in = 0;
  std::size_t sample_len = 0;
  std::size_t resolution = 0;
  std::vector<std::size_t> closure_cells;
  std::vector<Rational> fixed_point_hits;
  bool multi_flag = false;

  /// Evidence for an omega-limit set holding a fixed point and another point.
  bool condition_evidence() const { return !fixed_point_hits.empty() && multi_flag; }
};

inline OmegaEstimate omega_estimate(const PLMap& f, const Rational& b, std::size_t burn_in, std::size_t sample_len,
                                    std::size_t resolution, const PrecisionCap& cap = {}) {
  if (sample_len == 0) throw std::invalid_argument("sample_len must be positive");
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  OmegaEstimate est{b, burn_in, sample_len, resolution, {}, {}, false};
  const Rational width = Rational(f.hi() - f.lo()) / static_cast<unsigned long>(resolution);
  std::vector<char> seen(resolution, 0);
  Rational x = b;
  f(x);
  for (std::size_t i = 0; i < burn_in; ++i) x = capped_step(f, x, cap);
  for (std::size_t i = 0; i < sample_len; ++i) {
    seen[detail::cell_index(x, f.lo(), width, resolution)] = 1;
    x = capped_step(f, x, cap);
  }
  for (std::size_t i = 0; i < resolution; ++i) {
    if (seen[i]) est.closure_cells.push_back(i);
  }
  for (auto& z : solve_fixed(f, f.domain()).representatives()) {
    if (seen[detail::cell_index(z, f.lo(), width, resolution)]) est.fixed_point_hits.push_back(z);
  }
  for (std::size_t i : est.closure_cells) {
    const Rational a = f.lo() + width * static_cast<unsigned long>(i);
    const RatInterval cell{a, Rational(a + width)};
    bool touches = std::any_of(est.fixed_point_hits.begin(), est.fixed_point_hits.end(),
                               [&](const Rational& z) { return cell.contains(z); });
    if (!touches) {
      est.multi_flag = true;
      break;
    }
  }
  return est;
}

// ---------------------------------------------------------------------------
// Condition (4): Li-Yorke pairs

enum class LYVerdict { proximal_separating, indeterminate };

inline const char* to_string(LYVerdict v) {
  return v == LYVerdict::proximal_separating ? "proximal-separating" : "indeterminate";
}

/// Gap statistics of one pair over the tail n in [horizon/2, horizon].
struct LYReport {
  Rational x, y;
  std::size_t horizon = 0;
  Rational sup_gap;
  Rational inf_gap;
  LYVerdict verdict = LYVerdict::indeterminate;
};

struct DetectorThresholds {
  Rational delta_sep{1, 100};
  Rational delta_prox{1, 1000};
  std::size_t horizon = 10000;
};

struct LYScan {
  std::vector<LYReport> reports;
  std::size_t proximal_separating = 0;
  /// A sampled point whose orbit meets hypothesis A, so it is no candidate
  /// for asymptotic period 1 or 2 through the monotone/spiral picture.
  std::optional<Rational> non_period_two_point;
  bool densely_chaotic_evidence = false;
};

namespace detail {

inline constexpr unsigned long kSampleDenominator = 1000003;

inline Rational sample_point(const PLMap& f, std::size_t resolution, std::mt19937_64& rng) {
  const Rational width = Rational(f.hi() - f.lo()) / static_cast<unsigned long>(resolution);
  const unsigned long cell = static_cast<unsigned long>(rng() % resolution);
  const unsigned long off = static_cast<unsigned long>(rng() % kSampleDenominator);
  Rational frac(off, kSampleDenominator);
  frac.canonicalize();
  Rational x = f.lo() + width * (Rational(cell) + frac);
  return x;
}

}  // namespace detail

inline LYReport li_yorke_pair(const PLMap& f, const Rational& x, const Rational& y, const DetectorThresholds& th,
                              const PrecisionCap& cap = {}) {
  LYReport rep{x, y, th.horizon, Rational(0), Rational(0), LYVerdict::indeterminate};
  Rational a = x, b = y;
  bool first = true;
  const std::size_t tail = th.horizon / 2;
  for (std::size_t n = 0; n <= th.horizon; ++n) {
    if (n >= tail) {
      Rational gap = abs_of(Rational(a - b));
      if (first || rep.sup_gap < gap) rep.sup_gap = gap;
      if (first || gap < rep.inf_gap) rep.inf_gap = gap;
      first = false;
    }
    if (n < th.horizon) {
      a = capped_step(f, a, cap);
      b = capped_step(f, b, cap);
    }
  }
  if (th.delta_sep <= rep.sup_gap && rep.inf_gap <= th.delta_prox) rep.verdict = LYVerdict::proximal_separating;
  return rep;
}

/// Samples `num_pairs` pairs from a seeded generator (cell chosen uniformly
/// at `resolution`, offset inside the cell on a 1/1000003 grid) and records
/// gap statistics. The first `classify_samples` sampled points are also run
/// through classify_orbit.
inline LYScan li_yorke_scan(const PLMap& f, std::size_t num_pairs, const DetectorThresholds& th, std::size_t resolution,
                            std::uint64_t seed, std::size_t classify_samples = 8, const PrecisionCap& cap = {}) {
  if (sgn(th.delta_sep) <= 0 || sgn(th.delta_prox) <= 0) throw std::invalid_argument("thresholds must be positive");
  std::mt19937_64 rng(seed);
  LYScan scan;
  for (std::size_t k = 0; k < num_pairs; ++k) {
    Rational x = detail::sample_point(f, resolution, rng);
    Rational y = detail::sample_point(f, resolution, rng);
    scan.reports.push_back(li_yorke_pair(f, x, y, th, cap));
    if (scan.reports.back().verdict == LYVerdict::proximal_separating) ++scan.proximal_separating;
  }
  for (std::size_t k = 0; k < std::min(classify_samples, scan.reports.size()) && !scan.non_period_two_point; ++k) {
    try {
      classify_orbit(f, scan.reports[k].x, th.horizon);
    } catch (const HypothesisAFound&) {
      scan.non_period_two_point = scan.reports[k].x;
    }
  }
  scan.densely_chaotic_evidence = scan.proximal_separating > 0 && scan.non_period_two_point.has_value();
  return scan;
}

// ---------------------------------------------------------------------------
// Condition (5): oscillating consecutive gaps

struct OscillationResult {
  bool verdict = false;
  Rational max_tail_gap;
  Rational min_tail_gap;
  std::size_t tail_start = 0;
  std::size_t horizon = 0;
};

/// g_n = |f^n(c) - f^(n+1)(c)| for n in [horizon/2, horizon]; true iff the
/// tail maximum reaches delta_sep and the tail minimum drops to delta_prox.
inline OscillationResult oscillation_test(const PLMap& f, const Rational& c, const DetectorThresholds& th,
                                          const PrecisionCap& cap = {}) {
  OscillationResult res;
  res.horizon = th.horizon;
  res.tail_start = th.horizon / 2;
  Rational x = c;
  f(x);
  bool first = true;
  for (std::size_t n = 0; n <= th.horizon; ++n) {
    Rational next = capped_step(f, x, cap);
    if (n >= res.tail_start) {
      Rational g = abs_of(Rational(x - next));
      if (first || res.max_tail_gap < g) res.max_tail_gap = g;
      if (first || g < res.min_tail_gap) res.min_tail_gap = g;
      first = false;
    }
    x = std::move(next);
  }
  res.verdict = th.delta_sep <= res.max_tail_gap && res.min_tail_gap <= th.delta_prox;
  return res;
}

}  // namespace plturb
