#pragma once

/// Full analysis of one map: runs every detector, builds and verifies
/// certificates for each hypothesis-A point they expose, and collects the
/// result as a JSON report. Exact findings point at a certificate; the
/// sampled detectors are labelled as heuristic evidence.

#include "plturb/certify.hpp"
#include "plturb/detectors.hpp"
#include "plturb/serialize.hpp"
#include "plturb/witness.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace plturb {

inline constexpr const char* kReportFormat = "plturb-report/1";
inline constexpr const char* kHeuristic = "heuristic evidence";
inline constexpr const char* kCertified = "certificate";
inline constexpr const char* kExactSearch = "exact search";

struct AnalysisOptions {
  std::size_t horizon = 10000;
  std::size_t resolution = 1024;
  Rational epsilon{1, 1024};
  std::size_t max_odd = 7;
  std::size_t tower = 0;
  std::uint64_t seed = 1;
  std::size_t ly_pairs = 32;
  DetectorThresholds thresholds;
  std::vector<Rational> orbit_seeds;
  std::size_t budget = kDefaultBreakpointBudget;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t micros() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline json hypothesis_json(const HypothesisA& h) {
  return {{"c", io::rat(h.c)}, {"n", h.n}, {"side", to_string(h.side)}};
}

inline json classification_json(const OrbitClassification& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MonotoneLimit>) {
          return {{"kind", "monotone"},
                  {"limit", io::rat(v.limit)},
                  {"from_index", v.from_index},
                  {"direction", v.increasing ? "increasing" : "decreasing"}};
        } else if constexpr (std::is_same_v<T, Spiral>) {
          json j{{"kind", "spiral"},
                 {"z_hat", io::rat(v.z_hat)},
                 {"p_bounds", io::interval(v.p_bounds)},
                 {"q_bounds", io::interval(v.q_bounds)},
                 {"switch_count", v.switch_indices.size()},
                 {"computed", v.computed}};
          if (v.p) j["p"] = io::rat(*v.p);
          if (v.q) j["q"] = io::rat(*v.q);
          json idx = json::array();
          for (std::size_t k = 0; k < std::min<std::size_t>(v.switch_indices.size(), 16); ++k) {
            idx.push_back(v.switch_indices[k]);
          }
          j["first_switches"] = idx;
          return j;
        } else {
          return {{"kind", "inconclusive"}, {"horizon", v.horizon}, {"computed", v.computed}, {"reason", v.reason}};
        }
      },
      c);
}

}  // namespace detail

/// Accumulates certificates, one per distinct hypothesis-A point.
class CertificateLedger {
 public:
  CertificateLedger(const PLMap& f, const AnalysisOptions& opt) : f_(f), opt_(opt) {}

  /// Builds, verifies and records the witness for h; returns the index of
  /// the entry in the report's certificate list.
  std::size_t add(const HypothesisA& h, const std::string& source) {
    for (std::size_t i = 0; i < seen_.size(); ++i) {
      if (seen_[i].c == h.c && seen_[i].n == h.n && seen_[i].side == h.side) {
        entries_[i]["sources"].push_back(source);
        return i;
      }
    }
    json e{{"hypothesis", detail::hypothesis_json(h)}, {"sources", json::array({source})}};
    try {
      WitnessResult res = build_witness(f_, h);
      e["case"] = res.trace.case_id;
      if (res.is_boundary()) {
        const auto& b = std::get<TwoCycleBoundary>(res.outcome);
        e["outcome"] = "two_cycle_boundary";
        e["partner"] = io::rat(b.partner);
      } else {
        Certificate cert = res.is_trap() ? Certificate(std::get<TrapCertificate>(res.outcome))
                                         : Certificate(std::get<DoubleTurbulenceCertificate>(res.outcome));
        if (res.is_double() && opt_.tower > 0 && res.trace.case_id == 3) {
          res.trace.tower = periodic_tower(f_, res.trace, opt_.tower, opt_.budget);
          e["tower_verified"] = static_cast<bool>(verify_tower(f_, res.trace.tower));
        }
        const Verdict v = verify(f_, cert);
        e["outcome"] = kind_tag(cert);
        e["certificate"] = certificate_to_json(cert);
        e["trace"] = trace_to_json(res.trace);
        e["verified"] = v.ok;
        if (!v.ok) e["failure"] = to_string(v.clause);
        if (v.ok) ++verified_;
      }
    } catch (const ComplexityLimit& ex) {
      e["outcome"] = "budget_exceeded";
      e["detail"] = ex.what();
    } catch (const ConstructionFailure& ex) {
      e["outcome"] = "construction_failure";
      e["detail"] = ex.what();
    }
    seen_.push_back(h);
    entries_.push_back(std::move(e));
    return entries_.size() - 1;
  }

  json to_json() const { return json(entries_); }
  std::size_t verified() const { return verified_; }

 private:
  const PLMap& f_;
  const AnalysisOptions& opt_;
  std::vector<HypothesisA> seen_;
  std::vector<json> entries_;
  std::size_t verified_ = 0;
};

inline json analyze(const PLMap& f, const AnalysisOptions& opt) {
  json report;
  json timings;
  json conditions;
  CertificateLedger ledger(f, opt);

  report["format"] = kReportFormat;
  report["map_fingerprint"] = fingerprint(f);
  report["parameters"] = {{"horizon", opt.horizon},
                          {"resolution", opt.resolution},
                          {"epsilon", io::rat(opt.epsilon)},
                          {"max_odd", opt.max_odd},
                          {"tower", opt.tower},
                          {"seed", opt.seed},
                          {"ly_pairs", opt.ly_pairs},
                          {"delta_sep", io::rat(opt.thresholds.delta_sep)},
                          {"delta_prox", io::rat(opt.thresholds.delta_prox)}};
  DetectorThresholds th = opt.thresholds;
  th.horizon = opt.horizon;

  // (1) odd period
  {
    detail::Stopwatch sw;
    json c1;
    try {
      if (auto hit = detect_odd_period(f, opt.max_odd, opt.budget)) {
        const HypothesisA h = *check_hypothesis_A(f, hit->c, hit->n);
        c1 = {{"status", "found"}, {"c", io::rat(hit->c)}, {"n", hit->n}, {"basis", kCertified},
              {"certificate", ledger.add(h, "condition_1")}};
      } else {
        c1 = {{"status", "not_found"}, {"searched_up_to", opt.max_odd}, {"basis", kExactSearch}};
      }
    } catch (const ComplexityLimit&) {
      c1 = {{"status", "budget_exceeded"}, {"basis", kExactSearch}};
    }
    conditions["1_odd_period"] = c1;
    timings["odd_period_us"] = sw.micros();
  }

  // (2) chain recurrence, with the exact hypothesis-A point it yields
  {
    detail::Stopwatch sw;
    const ChainRecurrenceReport rep = chain_recurrent(f, opt.resolution, opt.epsilon);
    json c2{{"status", rep.dense_flag ? "dense" : "not_dense"},
            {"basis", kHeuristic},
            {"recurrent_cells", rep.recurrent_cells.size()},
            {"resolution", rep.resolution},
            {"scc_count", rep.scc_count},
            {"dense_at_resolution", rep.dense_at_resolution},
            {"dense_at_double", rep.dense_at_double}};
    if (rep.witness_a) c2["witness_a"] = io::rat(*rep.witness_a);
    if (rep.dense_flag) {
      std::vector<Rational> candidates;
      if (rep.witness_a) candidates.push_back(*rep.witness_a);
      for (const auto& p : f.points()) candidates.push_back(p.x);
      for (const auto& x0 : candidates) {
        if (f(x0) == x0) continue;
        if (auto c = chain_point_to_c(f, x0, &rep)) {
          if (auto h = check_hypothesis_A(f, *c, 2)) {
            c2["x0"] = io::rat(x0);
            c2["c"] = io::rat(*c);
            c2["certificate"] = ledger.add(*h, "condition_2");
            break;
          }
        }
      }
    }
    conditions["2_chain_recurrence"] = c2;
    timings["chain_recurrence_us"] = sw.micros();
  }

  // (4) Li-Yorke sampling; its first sample also seeds (3) and (5)
  std::optional<Rational> sample;
  {
    detail::Stopwatch sw;
    const LYScan scan = li_yorke_scan(f, opt.ly_pairs, th, opt.resolution, opt.seed);
    json c4{{"status", scan.densely_chaotic_evidence ? "evidence" : "no_evidence"},
            {"basis", kHeuristic},
            {"pairs", scan.reports.size()},
            {"proximal_separating", scan.proximal_separating}};
    if (!scan.reports.empty()) sample = scan.reports.front().x;
    if (scan.non_period_two_point) {
      c4["non_period_two_point"] = io::rat(*scan.non_period_two_point);
      try {
        classify_orbit(f, *scan.non_period_two_point, opt.horizon);
      } catch (const HypothesisAFound& e) {
        c4["certificate"] = ledger.add(e.hypothesis(), "condition_4");
      }
    }
    conditions["4_li_yorke"] = c4;
    timings["li_yorke_us"] = sw.micros();
  }

  {
    detail::Stopwatch sw;
    const Rational b = sample.value_or(f.domain().mid());
    const OmegaEstimate est = omega_estimate(f, b, opt.horizon / 2, opt.horizon / 2, opt.resolution);
    json hits = json::array();
    for (const auto& z : est.fixed_point_hits) hits.push_back(io::rat(z));
    conditions["3_omega_limit"] = {{"status", est.condition_evidence() ? "evidence" : "no_evidence"},
                                   {"basis", kHeuristic},
                                   {"seed_point", io::rat(b)},
                                   {"closure_cells", est.closure_cells.size()},
                                   {"fixed_point_hits", hits},
                                   {"multi_flag", est.multi_flag}};
    timings["omega_limit_us"] = sw.micros();
  }

  {
    detail::Stopwatch sw;
    const Rational c = sample.value_or(f.domain().mid());
    const OscillationResult osc = oscillation_test(f, c, th);
    conditions["5_oscillation"] = {{"status", osc.verdict ? "evidence" : "no_evidence"},
                                   {"basis", kHeuristic},
                                   {"seed_point", io::rat(c)},
                                   {"tail_start", osc.tail_start},
                                   {"max_tail_gap", io::rat(osc.max_tail_gap)},
                                   {"min_tail_gap", io::rat(osc.min_tail_gap)}};
    timings["oscillation_us"] = sw.micros();
  }

  json orbits = json::array();
  {
    detail::Stopwatch sw;
    for (const auto& x0 : opt.orbit_seeds) {
      json o{{"x0", io::rat(x0)}};
      try {
        o["classification"] = detail::classification_json(classify_orbit(f, x0, opt.horizon));
      } catch (const HypothesisAFound& e) {
        o["classification"] = {{"kind", "hypothesis_a"}, {"hypothesis", detail::hypothesis_json(e.hypothesis())}};
        o["certificate"] = ledger.add(e.hypothesis(), "orbit");
      }
      orbits.push_back(std::move(o));
    }
    timings["orbits_us"] = sw.micros();
  }

  report["conditions"] = conditions;
  report["certificates"] = ledger.to_json();
  report["orbits"] = orbits;
  report["verified_certificates"] = ledger.verified();
  report["timings"] = timings;
  return report;
}

}  // namespace plturb
