#include "plturb/witness.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace plturb {
namespace {

using testing::R;

// Maps found by brute-force search over small random PL maps.
PLMap case1_map() { return testing::map_of({{"0", "1"}, {"5/8", "2/7"}, {"5/6", "1/7"}, {"1", "1/5"}}); }
PLMap case2_map() { return testing::map_of({{"0", "2/5"}, {"2/3", "3/4"}, {"1", "0"}}); }

TEST(HypothesisATest, Examples) {
  const PLMap T = testing::tent();
  auto h = check_hypothesis_A(T, R("2/7"), 3);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->side, Side::up);
  EXPECT_FALSE(check_hypothesis_A(testing::identity(), R("1/3"), 4));
  // boundary equality f^n(c) = c is admitted
  auto flip = check_hypothesis_A(testing::flip(), R("1/4"), 2);
  ASSERT_TRUE(flip);
  EXPECT_EQ(flip->side, Side::up);
  EXPECT_FALSE(check_hypothesis_A(T, R("0"), 2));
  EXPECT_THROW(check_hypothesis_A(T, R("1/3"), 1), std::invalid_argument);
}

// Every value below follows from the construction by hand:
// X = {2/7, 4/7, 6/7}; a = 4/7 (the largest point moving right); b = 6/7;
// z = 2/3 solves 2 - 2x = x; v = 4/7 solves 2 - 2x = 6/7; z0 = 2/3 solves
// 4x - 2 = x; T^2 = 2/3 on [0, 4/7] at 1/6 and 1/3 so d = 1/3; T^2(1/2) = 0
// so s = 0 <= d (case 3); u1 = 5/12 solves 2 - 4x = 1/3. T(d) = T(z0) = 2/3
// and T([1/3, 2/3]) = [2/3, 1], so r = 1, u = 5/6 solves 2 - 2x = 1/3 and
// w = 3/4 is where T^2 reaches 1.
TEST(BuildWitnessTest, TentCaseThree) {
  const PLMap T = testing::tent();
  const WitnessResult res = build_witness(T, {R("2/7"), 3, Side::up});
  ASSERT_TRUE(res.is_double());
  const WitnessTrace& tr = res.trace;
  EXPECT_EQ(tr.X, (std::vector<Rational>{R("2/7"), R("4/7"), R("6/7")}));
  EXPECT_EQ(tr.a, R("4/7"));
  EXPECT_EQ(tr.b, R("6/7"));
  EXPECT_EQ(tr.z, R("2/3"));
  EXPECT_EQ(tr.v, R("4/7"));
  EXPECT_EQ(tr.z0, R("2/3"));
  EXPECT_EQ(tr.case_id, 3);
  EXPECT_EQ(tr.d, R("1/3"));
  EXPECT_EQ(tr.s, R("0"));
  EXPECT_EQ(tr.u1, R("5/12"));
  EXPECT_EQ(tr.r, R("1"));
  EXPECT_EQ(tr.u, R("5/6"));
  EXPECT_EQ(tr.w, R("3/4"));
  EXPECT_FALSE(tr.e);

  const auto& cert = std::get<DoubleTurbulenceCertificate>(res.outcome);
  EXPECT_EQ(cert.left.J, RatInterval(R("1/3"), R("2/3")));
  EXPECT_EQ(cert.left.J0, RatInterval(R("1/3"), R("5/12")));
  EXPECT_EQ(cert.left.J1, RatInterval(R("5/12"), R("2/3")));
  EXPECT_EQ(cert.right.J, RatInterval(R("2/3"), R("5/6")));
  EXPECT_EQ(cert.right.J0, RatInterval(R("2/3"), R("3/4")));
  EXPECT_EQ(cert.right.J1, RatInterval(R("3/4"), R("5/6")));
  EXPECT_TRUE(verify_double(T, cert));
}

TEST(BuildWitnessTest, CaseOneTrap) {
  const PLMap f = case1_map();
  auto h = check_hypothesis_A(f, R("5/8"), 2);
  ASSERT_TRUE(h);
  ASSERT_EQ(h->side, Side::down);
  const WitnessResult res = build_witness(f, *h);
  ASSERT_TRUE(res.is_trap());
  EXPECT_EQ(res.trace.case_id, 1);
  const auto& trap = std::get<TrapCertificate>(res.outcome);
  EXPECT_TRUE(verify_trap(f, trap));
  EXPECT_TRUE(trap.K.contains(R("5/8")));
  // the down-side trap hugs max I
  EXPECT_EQ(trap.K.hi, f.hi());
}

TEST(BuildWitnessTest, CaseTwoTrap) {
  const PLMap f = case2_map();
  auto h = check_hypothesis_A(f, R("2/3"), 2);
  ASSERT_TRUE(h);
  ASSERT_EQ(h->side, Side::up);
  const WitnessResult res = build_witness(f, *h);
  ASSERT_TRUE(res.is_trap());
  EXPECT_EQ(res.trace.case_id, 2);
  EXPECT_EQ(res.trace.z, R("9/13"));
  EXPECT_EQ(res.trace.z0, R("9/13"));
  EXPECT_EQ(res.trace.v, R("2/3"));
  const auto& trap = std::get<TrapCertificate>(res.outcome);
  EXPECT_EQ(trap.K.lo, *res.trace.s);
  EXPECT_TRUE(verify_trap(f, trap));
}

TEST(BuildWitnessTest, TwoCycleBoundary) {
  const WitnessResult res = build_witness(testing::flip(), {R("1/4"), 2, Side::up});
  ASSERT_TRUE(res.is_boundary());
  EXPECT_EQ(std::get<TwoCycleBoundary>(res.outcome).partner, R("3/4"));
  EXPECT_EQ(res.trace.z0, res.trace.v);
}

TEST(BuildWitnessTest, RejectsFalseHypothesis) {
  EXPECT_THROW(build_witness(testing::tent(), {R("2/7"), 3, Side::down}), std::invalid_argument);
  EXPECT_THROW(build_witness(testing::identity(), {R("1/2"), 2, Side::up}), std::invalid_argument);
}

TEST(BuildWitnessTest, ReflectionEquivariance) {
  const PLMap T = testing::tent();
  const PLMap g = reflect(T);
  const Rational axis = T.axis();
  const WitnessResult up = build_witness(T, {R("2/7"), 3, Side::up});
  auto h = check_hypothesis_A(g, R("5/7"), 3);
  ASSERT_TRUE(h);
  ASSERT_EQ(h->side, Side::down);
  const WitnessResult down = build_witness(g, *h);
  ASSERT_TRUE(down.is_double());
  const auto& cu = std::get<DoubleTurbulenceCertificate>(up.outcome);
  const auto& cd = std::get<DoubleTurbulenceCertificate>(down.outcome);
  EXPECT_EQ(cd.left.J, reflect(cu.right.J, axis));
  EXPECT_EQ(cd.right.J, reflect(cu.left.J, axis));
  EXPECT_EQ(cd.right.J0, reflect(cu.left.J1, axis));
  EXPECT_EQ(cd.right.J1, reflect(cu.left.J0, axis));
  EXPECT_EQ(down.trace.side, Side::down);
  EXPECT_EQ(down.trace.d, Rational(axis - *up.trace.d));
  EXPECT_EQ(down.trace.case_id, 3);
}

TEST(PeriodicTowerTest, Tent) {
  const PLMap T = testing::tent();
  const WitnessResult res = build_witness(T, {R("2/7"), 3, Side::up});
  EXPECT_TRUE(periodic_tower(T, res.trace, 0).empty());
  auto one = periodic_tower(T, res.trace, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].p, R("2/5"));
  EXPECT_EQ(one[0].period, 2u);
  auto three = periodic_tower(T, res.trace, 3);
  ASSERT_EQ(three.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(three[i].period, 2 * (i + 1));
    EXPECT_TRUE(has_minimal_period(T, three[i].p, three[i].period));
    // nested: d < p_n < u_n < p_(n-1)
    EXPECT_LT(*res.trace.d, three[i].p);
    EXPECT_LT(three[i].p, three[i].u);
    if (i > 0) EXPECT_LT(three[i].u, three[i - 1].p);
  }
}

TEST(PeriodicTowerTest, NeedsCaseThree) {
  const PLMap f = case2_map();
  const WitnessResult res = build_witness(f, {R("2/3"), 2, Side::up});
  EXPECT_THROW(periodic_tower(f, res.trace, 2), std::invalid_argument);
}

TEST(PeriodicTowerTest, DownSide) {
  const PLMap g = reflect(testing::tent());
  const WitnessResult res = build_witness(g, {R("5/7"), 3, Side::down});
  auto tower = periodic_tower(g, res.trace, 3);
  ASSERT_EQ(tower.size(), 3u);
  EXPECT_EQ(tower[0].p, R("3/5"));
  for (const auto& e : tower) EXPECT_TRUE(has_minimal_period(g, e.p, e.period));
}

TEST(ClassifyOrbitTest, MonotoneContraction) {
  auto c = classify_orbit(testing::contraction(), R("0"), 100);
  ASSERT_TRUE(std::holds_alternative<MonotoneLimit>(c));
  const auto& m = std::get<MonotoneLimit>(c);
  EXPECT_EQ(m.limit, R("1/2"));
  EXPECT_TRUE(m.increasing);
  EXPECT_EQ(m.from_index, 0u);
}

TEST(ClassifyOrbitTest, FlipIsExactSpiral) {
  auto c = classify_orbit(testing::flip(), R("1/4"), 100);
  ASSERT_TRUE(std::holds_alternative<Spiral>(c));
  const auto& s = std::get<Spiral>(c);
  EXPECT_EQ(s.z_hat, R("1/2"));
  EXPECT_EQ(s.p, R("1/4"));
  EXPECT_EQ(s.q, R("3/4"));
  EXPECT_EQ(testing::flip()(*s.p), *s.q);
  EXPECT_EQ(testing::flip()(*s.q), *s.p);
}

TEST(ClassifyOrbitTest, TentTriggersHypothesis) {
  try {
    classify_orbit(testing::tent(), R("2/7"), 100);
    FAIL() << "expected HypothesisAFound";
  } catch (const HypothesisAFound& e) {
    EXPECT_EQ(e.hypothesis().c, R("2/7"));
    EXPECT_EQ(e.hypothesis().n, 3u);
    EXPECT_EQ(e.hypothesis().side, Side::up);
  }
}

TEST(ClassifyOrbitTest, FixedPointReached) {
  // x/2 from 0 is already fixed; x/2 + 1/4 from 1/2 as well
  auto c = classify_orbit(testing::halving(), R("0"), 10);
  ASSERT_TRUE(std::holds_alternative<MonotoneLimit>(c));
  EXPECT_EQ(std::get<MonotoneLimit>(c).limit, R("0"));
  auto t = classify_orbit(testing::contraction(), R("1/2"), 10);
  ASSERT_TRUE(std::holds_alternative<MonotoneLimit>(t));
  EXPECT_EQ(std::get<MonotoneLimit>(t).limit, R("1/2"));
  EXPECT_EQ(std::get<MonotoneLimit>(t).from_index, 0u);
  // the tent sends 1/2 to 1 and then to 0, a hypothesis-A point
  EXPECT_THROW(classify_orbit(testing::tent(), R("1/2"), 10), HypothesisAFound);
}

TEST(ClassifyOrbitTest, DampedSpiralHasBounds) {
  // f(x) = 1 - x/2 spirals into 2/3 without reaching it
  const PLMap f = testing::map_of({{"0", "1"}, {"1", "1/2"}});
  auto c = classify_orbit(f, R("0"), 200);
  ASSERT_TRUE(std::holds_alternative<Spiral>(c));
  const auto& s = std::get<Spiral>(c);
  EXPECT_EQ(s.z_hat, R("2/3"));
  EXPECT_FALSE(s.p);
  EXPECT_TRUE(s.p_bounds.contains(R("2/3")));
  EXPECT_GT(s.switch_indices.size(), 10u);
}

TEST(ClassifyOrbitTest, DenominatorBoundGivesInconclusive) {
  // x -> 1 - x/2 again, with a tight bit bound
  const PLMap f = testing::map_of({{"0", "1"}, {"1", "1/2"}});
  auto c = classify_orbit(f, R("0"), 10000, {.max_denominator_bits = 3});
  ASSERT_TRUE(std::holds_alternative<Inconclusive>(c));
  EXPECT_LT(std::get<Inconclusive>(c).computed, 10u);
}

TEST(PairFromFixedPointTest, TentTurbulentPair) {
  const PLMap T = testing::tent();
  auto res = theorem3_witness(T, R("0"), R("1/3"));
  ASSERT_TRUE(std::holds_alternative<TurbulencePair>(res.outcome));
  const auto& p = std::get<TurbulencePair>(res.outcome);
  EXPECT_EQ(p.map_power, 1);
  EXPECT_EQ(p.J0, RatInterval(R("0"), R("1/2")));
  EXPECT_EQ(p.J1, RatInterval(R("1/2"), R("1")));
  EXPECT_TRUE(verify_turbulence(T, p));
}

TEST(PairFromFixedPointTest, ReflectedTent) {
  const PLMap g = reflect(testing::tent());
  auto res = theorem3_witness(g, R("1"), R("2/3"));
  ASSERT_TRUE(std::holds_alternative<TurbulencePair>(res.outcome));
  const auto& p = std::get<TurbulencePair>(res.outcome);
  EXPECT_EQ(p.J0, RatInterval(R("0"), R("1/2")));
  EXPECT_EQ(p.J1, RatInterval(R("1/2"), R("1")));
}

TEST(PairFromFixedPointTest, PreconditionFilter) {
  const PLMap f = testing::contraction();
  EXPECT_THROW(theorem3_witness(f, R("1/2"), R("3/4")), std::invalid_argument);
  EXPECT_THROW(theorem3_witness(f, R("1/2"), R("1/4")), std::invalid_argument);
  EXPECT_THROW(theorem3_witness(f, R("1/3"), R("1/4")), std::invalid_argument);
}

TEST(PairFromFixedPointTest, TrapIntervalCaseOne) {
  // fixed points 0, 5/8 and 1; with z = 1, c = 1/2 we have f(c) = 1/4 < c < z
  // and f([0, 1/2]) = [0, 1/4] never reaches z0 = 5/8
  const PLMap f = testing::map_of({{"0", "0"}, {"1/2", "1/4"}, {"3/4", "1"}, {"1", "1"}});
  auto res = theorem3_witness(f, R("1"), R("1/2"));
  ASSERT_TRUE(std::holds_alternative<TrapInterval>(res.outcome));
  const auto& j = std::get<TrapInterval>(res.outcome);
  EXPECT_TRUE(verify_trap_interval(f, j));
  EXPECT_TRUE(j.J.contains(R("1/2")));
  EXPECT_FALSE(j.J.contains(R("1")));
  EXPECT_EQ(res.case_id, 1);
  EXPECT_EQ(res.z0, R("5/8"));
}

// Dichotomy and trace faithfulness on random maps: exactly one outcome,
// certificates verify, and each trace field satisfies its defining relation
// when rechecked with exact-core calls.
TEST(WitnessProperty, DichotomyAndTraceFaithfulness) {
  std::mt19937_64 rng(424242);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const PLMap f = testing::random_map(rng, 6, 24);
    const PLMap f2 = compose(f, 2);
    for (const auto& bp : f.points()) {
      for (std::size_t n = 2; n <= 5; ++n) {
        auto h = check_hypothesis_A(f, bp.x, n);
        if (!h || h->side != Side::up) continue;
        const WitnessResult res = build_witness(f, *h);
        const WitnessTrace& t = res.trace;
        ++checked;
        if (res.is_boundary()) {
          EXPECT_EQ(iterate(f, h->c, 2), h->c);
          continue;
        }
        // a is the largest orbit point moving right
        EXPECT_GT(f(t.a), t.a);
        for (const auto& x : t.X) {
          if (t.a < x) EXPECT_LE(f(x), x);
        }
        EXPECT_LE(f(t.b), t.a);
        EXPECT_TRUE(t.a <= t.b && t.b <= f(t.a));
        EXPECT_EQ(f(t.z), t.z);
        EXPECT_TRUE(solve_fixed(f, {t.a, t.z}).min() == t.z);
        EXPECT_EQ(f(t.v), t.b);
        EXPECT_TRUE(solve_equal(f, t.b, {t.v, t.z}).max() == t.v);
        EXPECT_EQ(f2(t.z0), t.z0);
        EXPECT_EQ(solve_fixed(f2, {t.v, t.z0}).min(), t.z0);
        if (t.case_id == 1) {
          EXPECT_TRUE(solve_equal(f2, t.z0, {f.lo(), t.v}).empty());
          EXPECT_TRUE(res.is_trap());
        } else {
          ASSERT_TRUE(t.d);
          EXPECT_EQ(f2(*t.d), t.z0);
          EXPECT_EQ(solve_equal(f2, t.z0, {f.lo(), t.v}).max(), *t.d);
          EXPECT_EQ(image(f2, {*t.d, t.z0}).lo, *t.s);
          if (t.case_id == 2) {
            EXPECT_GT(*t.s, *t.d);
            EXPECT_TRUE(res.is_trap());
          } else {
            EXPECT_EQ(f2(*t.u1), *t.d);
            EXPECT_EQ(solve_equal(f2, *t.d, {*t.d, t.z0}).min(), *t.u1);
            EXPECT_TRUE(res.is_double());
          }
        }
        if (res.is_trap()) EXPECT_TRUE(verify_trap(f, std::get<TrapCertificate>(res.outcome)));
        if (res.is_double()) EXPECT_TRUE(verify_double(f, std::get<DoubleTurbulenceCertificate>(res.outcome)));
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(WitnessProperty, TowerPeriodsOnRandomCaseThree) {
  std::mt19937_64 rng(5);
  int towers = 0;
  for (int trial = 0; trial < 300 && towers < 25; ++trial) {
    const PLMap f = testing::random_map(rng, 5, 16);
    for (const auto& bp : f.points()) {
      auto h = check_hypothesis_A(f, bp.x, 3);
      if (!h) continue;
      const WitnessResult res = build_witness(f, *h);
      if (res.trace.case_id != 3) continue;
      auto tower = periodic_tower(f, res.trace, 3);
      ASSERT_EQ(tower.size(), 3u);
      for (const auto& e : tower) EXPECT_TRUE(has_minimal_period(f, e.p, e.period));
      ++towers;
    }
  }
  EXPECT_GT(towers, 5);
}

// Mutual exclusion: a returned classification means no computed orbit point
// satisfies hypothesis A apart from period-2 points; a reported trigger is
// accepted by check_hypothesis_A.
TEST(WitnessProperty, ClassifyMutualExclusion) {
  std::mt19937_64 rng(77);
  int classified = 0, triggered = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const PLMap f = testing::random_map(rng, 5, 12);
    const Rational x0 = testing::random_point(rng, f, 12);
    const std::size_t horizon = 40;
    try {
      auto c = classify_orbit(f, x0, horizon);
      std::size_t computed = horizon;
      if (auto* s = std::get_if<Spiral>(&c)) computed = s->computed;
      if (auto* i = std::get_if<Inconclusive>(&c)) computed = i->computed;
      std::vector<Rational> xs{x0};
      for (std::size_t k = 0; k < computed; ++k) xs.push_back(testing::naive_iterate(f, xs.back(), 1));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (testing::naive_iterate(f, xs[i], 2) == xs[i]) continue;
        for (std::size_t j = i + 2; j < xs.size(); ++j) {
          const bool up = xs[i] < xs[i + 1] && xs[j] <= xs[i];
          const bool down = xs[i + 1] < xs[i] && xs[i] <= xs[j];
          EXPECT_FALSE(up || down) << "trial " << trial << " i " << i << " j " << j;
        }
      }
      ++classified;
    } catch (const HypothesisAFound& e) {
      auto h = check_hypothesis_A(f, e.hypothesis().c, e.hypothesis().n);
      ASSERT_TRUE(h);
      EXPECT_EQ(h->side, e.hypothesis().side);
      ++triggered;
    }
  }
  EXPECT_GT(classified, 20);
  EXPECT_GT(triggered, 20);
}

}  // namespace
}  // namespace plturb
