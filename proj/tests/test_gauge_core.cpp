#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gaugeprob/gaugeprob.hpp"
#include "support/test_support.hpp"

namespace gp = gaugeprob;
using gp::testing::random_division;
using gp::testing::random_gauge;

// ---- Interval ----

TEST(Interval, RejectsDegenerateAndReversed) {
  EXPECT_THROW(gp::Interval(1.0, 1.0), gp::InvalidArgument);
  EXPECT_THROW(gp::Interval(2.0, 1.0), gp::InvalidArgument);
  EXPECT_THROW(gp::Interval(0.0, INFINITY), gp::InvalidArgument);
  EXPECT_THROW(gp::Interval(NAN, 1.0), gp::InvalidArgument);
  const gp::Interval i(-1.0, 2.0);
  EXPECT_EQ(i.width(), 3.0);
  EXPECT_TRUE(i.contains(-1.0));
  EXPECT_TRUE(i.contains(2.0));
  EXPECT_FALSE(i.contains(2.5));
}

// ---- gauge_from_delta ----

TEST(GaugeFromDelta, ConstantDeltaGivesHalfWidths) {
  const auto g = gp::gauge_from_delta([](double) { return 0.4; });
  for (double t : {0.0, 0.3, 1.0}) {
    EXPECT_DOUBLE_EQ(g.widths(t).left, 0.2);
    EXPECT_DOUBLE_EQ(g.widths(t).right, 0.2);
  }
}

TEST(GaugeFromDelta, AffineDeltaAtZero) {
  const auto g = gp::gauge_from_delta([](double t) { return t + 1.0; });
  const auto w = g.widths(0.0);
  EXPECT_EQ(0.0 - w.left, -0.5);
  EXPECT_EQ(0.0 + w.right, 0.5);
}

TEST(GaugeFromDelta, TinyDelta) {
  const auto g = gp::gauge_from_delta([](double) { return 1e-9; });
  EXPECT_DOUBLE_EQ(g.widths(0.5).left, 5e-10);
  EXPECT_DOUBLE_EQ(g.widths(0.5).right, 5e-10);
}

TEST(GaugeFromDelta, NonPositiveDeltaIsInvalidGaugeAtTheEvaluatedPoint) {
  const auto g = gp::gauge_from_delta([](double t) { return t - 0.5; });
  EXPECT_NO_THROW(g.widths(0.9));
  try {
    g.widths(0.25);
    FAIL() << "expected InvalidGauge";
  } catch (const gp::InvalidGauge& e) {
    EXPECT_EQ(e.t(), 0.25);
  }
  EXPECT_THROW(gp::gauge_from_delta([](double) { return NAN; }).widths(0.0), gp::InvalidGauge);
  EXPECT_THROW(gp::constant_gauge(0.0), gp::InvalidArgument);
}

// ---- delta_from_gauge ----

TEST(DeltaFromGauge, SymmetricCase) {
  const auto d = gp::delta_from_gauge(gp::constant_gauge(0.4));
  EXPECT_DOUBLE_EQ(d(0.7), 0.2);
}

TEST(DeltaFromGauge, AsymmetricUsesMinAndImpliesSharpness) {
  const gp::Gauge g([](double) { return gp::GaugeWidths{0.1, 0.5}; });
  const auto delta = gp::delta_from_gauge(g);
  EXPECT_DOUBLE_EQ(delta(0.3), 0.1);
  // Brute force: every piece shorter than delta(tag) that contains its tag
  // lies inside gamma(tag), whatever the tag position.
  for (double w : {0.0999, 0.05, 0.001}) {
    for (int k = 0; k <= 1000; ++k) {
      const double lo = 0.2;
      const double tag = lo + w * k / 1000.0;
      EXPECT_TRUE(g.covers(tag, lo, lo + w)) << "w=" << w << " tag=" << tag;
    }
  }
  // A delta of alpha + beta = 0.6 does not imply it.
  EXPECT_FALSE(g.covers(0.2 + 0.5, 0.2, 0.2 + 0.55));
}

TEST(DeltaFromGauge, RoundTripHalvesThenTakesMin) {
  const auto d = gp::delta_from_gauge(gp::gauge_from_delta([](double) { return 0.4; }));
  EXPECT_DOUBLE_EQ(d(0.0), 0.2);
}

// Fineness in the delta sense: every piece shorter than delta at its tag.
static bool delta_fine(const gp::TaggedDivision& d, const gp::DeltaFn& delta) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d.length(i) < delta(d.tag(i)))) return false;
  return true;
}

TEST(DeltaGaugeEquivalence, SharpForGaugeFromDeltaImpliesDeltaFine) {
  std::mt19937_64 rng(11);
  const gp::Interval dom(0.0, 1.0);
  int sharp_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double c = gp::testing::uniform(rng, 0.05, 0.6);
    const gp::DeltaFn delta = [c](double t) { return c * (0.2 + t); };
    const auto d = random_division(rng, dom, 3 + rng() % 40);
    if (gp::is_sharp(d, gp::gauge_from_delta(delta))) {
      ++sharp_seen;
      EXPECT_TRUE(delta_fine(d, delta));
    }
  }
  EXPECT_GT(sharp_seen, 10);
}

TEST(DeltaGaugeEquivalence, DeltaFineForMinWidthImpliesSharp) {
  std::mt19937_64 rng(12);
  const gp::Interval dom(0.0, 1.0);
  int fine_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto g = random_gauge(rng, dom, trial % 2 == 1);
    const auto delta = gp::delta_from_gauge(g);
    const auto d = random_division(rng, dom, 3 + rng() % 200);
    if (delta_fine(d, delta)) {
      ++fine_seen;
      EXPECT_TRUE(gp::is_sharp(d, g));
    }
  }
  EXPECT_GT(fine_seen, 10);
}

TEST(DeltaGaugeEquivalence, DeltaFineDoesNotImplySharpForEndpointTags) {
  // Piece [0.1, 0.1 + 0.6 delta] tagged at its left end is delta-fine, yet it
  // leaves (t - delta/2, t + delta/2).
  const double delta = 0.2;
  const gp::TaggedDivision d({0.0, 0.1, 0.1 + 0.6 * delta, 1.0}, {0.0, 0.1, 1.0});
  EXPECT_LT(d.length(1), delta);
  EXPECT_FALSE(gp::constant_gauge(delta).covers(d.tag(1), d.left(1), d.right(1)));
}

TEST(DeltaGaugeEquivalence, GaugeFromDeltaMatchesExplicitSymmetricGauge) {
  std::mt19937_64 rng(13);
  const gp::Interval dom(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double c = gp::testing::uniform(rng, 0.01, 0.5);
    const gp::DeltaFn delta = [c](double t) { return c * (1.0 + t * t); };
    const auto from_delta = gp::gauge_from_delta(delta);
    const gp::Gauge explicit_gauge([delta](double t) {
      return gp::GaugeWidths{delta(t) / 2.0, delta(t) / 2.0};
    });
    const auto d = random_division(rng, dom, 2 + rng() % 60);
    EXPECT_EQ(gp::is_sharp(d, from_delta), gp::is_sharp(d, explicit_gauge));
  }
}

// ---- gauge_intersection ----

TEST(GaugeIntersection, ComponentwiseMin) {
  const gp::Gauge g1([](double) { return gp::GaugeWidths{0.2, 0.2}; });
  const gp::Gauge g2([](double) { return gp::GaugeWidths{0.1, 0.3}; });
  const auto w = gp::gauge_intersection(g1, g2).widths(0.5);
  EXPECT_DOUBLE_EQ(w.left, 0.1);
  EXPECT_DOUBLE_EQ(w.right, 0.2);
}

TEST(GaugeIntersection, Idempotent) {
  std::mt19937_64 rng(14);
  const gp::Interval dom(0.0, 1.0);
  const auto g = random_gauge(rng, dom, true);
  const auto gg = gp::gauge_intersection(g, g);
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    EXPECT_EQ(gg.widths(t).left, g.widths(t).left);
    EXPECT_EQ(gg.widths(t).right, g.widths(t).right);
  }
}

TEST(GaugeIntersection, SharpForIntersectionIsSharpForBoth) {
  std::mt19937_64 rng(15);
  const gp::Interval dom(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g1 = random_gauge(rng, dom, trial % 2 == 0);
    const auto g2 = random_gauge(rng, dom, trial % 3 == 0);
    const auto g = gp::gauge_intersection(g1, g2);
    // Built divisions are sharp for g by construction; random ones rarely are.
    const auto built = gp::cousin_partition(g, dom);
    ASSERT_TRUE(gp::is_sharp(built, g));
    EXPECT_TRUE(gp::is_sharp(built, g1));
    EXPECT_TRUE(gp::is_sharp(built, g2));
    const auto d = random_division(rng, dom, 1 + rng() % 300);
    if (gp::is_sharp(d, g)) {
      EXPECT_TRUE(gp::is_sharp(d, g1));
      EXPECT_TRUE(gp::is_sharp(d, g2));
    }
  }
}

// ---- TaggedDivision / is_sharp ----

TEST(TaggedDivision, ValidatesPointsAndTags) {
  EXPECT_THROW(gp::TaggedDivision({0.0}, {}), gp::InvalidArgument);
  EXPECT_THROW(gp::TaggedDivision({0.0, 1.0}, {}), gp::InvalidArgument);
  EXPECT_THROW(gp::TaggedDivision({0.0, 0.5, 0.5, 1.0}, {0.0, 0.5, 0.7}), gp::InvalidArgument);
  EXPECT_THROW(gp::TaggedDivision({0.0, 0.5, 1.0}, {0.6, 0.7}), gp::InvalidArgument);
  const gp::TaggedDivision d({0.0, 0.25, 1.0}, {0.25, 1.0});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d.mesh(), 0.75);
  EXPECT_EQ(d.domain(), gp::Interval(0.0, 1.0));
  EXPECT_THROW(d.retagged({0.3, 0.5}), gp::InvalidArgument);
}

TEST(IsSharp, SinglePieceExamples) {
  const auto g = gp::Gauge([](double) { return gp::GaugeWidths{0.1, 0.1}; });
  EXPECT_FALSE(gp::is_sharp(gp::TaggedDivision({0.0, 1.0}, {0.5}), g));
  EXPECT_TRUE(gp::is_sharp(gp::TaggedDivision({0.0, 0.1}, {0.05}), g));
}

TEST(IsSharp, StrictAtOpenEnds) {
  const auto g = gp::Gauge([](double) { return gp::GaugeWidths{0.125, 0.125}; });
  // [0, 0.25] tagged at 0.125 touches both open ends exactly.
  EXPECT_FALSE(gp::is_sharp(gp::TaggedDivision({0.0, 0.25}, {0.125}), g));
  EXPECT_TRUE(gp::is_sharp(gp::TaggedDivision({0.0, 0.25}, {0.125}),
                           gp::Gauge([](double) {
                             return gp::GaugeWidths{0.125000001, 0.125000001};
                           })));
}

// ---- cousin_partition ----

TEST(CousinPartition, ConstantGauge) {
  const gp::Interval dom(0.0, 1.0);
  const auto g = gp::constant_gauge(0.4);
  const auto d = gp::cousin_partition(g, dom);
  EXPECT_TRUE(gp::is_sharp(d, g));
  EXPECT_LT(d.mesh(), 0.4);
  EXPECT_EQ(d.points().front(), 0.0);
  EXPECT_EQ(d.points().back(), 1.0);
}

TEST(CousinPartition, ShrinkingGaugeIsFinerNearZero) {
  const gp::Interval dom(0.0, 1.0);
  const gp::Gauge g([](double t) {
    return gp::GaugeWidths{t / 2.0 + 0.01, t / 2.0 + 0.01};
  });
  const auto d = gp::cousin_partition(g, dom);
  EXPECT_TRUE(gp::is_sharp(d, g));
  EXPECT_LT(d.length(0), d.length(d.size() - 1));
}

TEST(CousinPartition, TagOrderIsLeftMidRight) {
  const gp::Interval dom(0.0, 1.0);
  // Only the right end accepts the whole domain.
  const gp::Gauge right_only([](double t) {
    return t == 1.0 ? gp::GaugeWidths{2.0, 0.1} : gp::GaugeWidths{0.01, 0.01};
  });
  const auto d = gp::cousin_partition(right_only, dom);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.tag(0), 1.0);
  // A wide constant gauge accepts the left end first.
  const auto wide = gp::cousin_partition(gp::constant_gauge(4.0), dom);
  ASSERT_EQ(wide.size(), 1u);
  EXPECT_EQ(wide.tag(0), 0.0);
}

TEST(CousinPartition, Deterministic) {
  std::mt19937_64 rng(16);
  const gp::Interval dom(-2.0, 3.0);
  const auto g = random_gauge(rng, dom, true);
  const auto a = gp::cousin_partition(g, dom);
  const auto b = gp::cousin_partition(g, dom);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.left(i), b.left(i));
    EXPECT_EQ(a.tag(i), b.tag(i));
  }
}

TEST(CousinPartition, RandomGaugesAlwaysSharp) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = gp::testing::uniform(rng, -5.0, 5.0);
    const gp::Interval dom(a, a + gp::testing::uniform(rng, 0.1, 3.0));
    const auto g = random_gauge(rng, dom, trial % 2 == 1);
    const auto d = gp::cousin_partition(g, dom);
    ASSERT_TRUE(gp::is_sharp(d, g)) << "trial " << trial;
  }
}

TEST(CousinPartition, PathologicalGaugeHitsDepthLimit) {
  const gp::Interval dom(0.0, 1.0);
  const gp::Gauge g([](double t) {
    const double r = std::abs(t - 1.0 / 3.0);
    return gp::GaugeWidths{1e-3 * r * r + 1e-300, 1e-3 * r * r + 1e-300};
  });
  EXPECT_THROW(gp::cousin_partition(g, dom), gp::PartitionLimitExceeded);
}

TEST(CousinPartition, PieceBudget) {
  const gp::Interval dom(0.0, 1.0);
  gp::PartitionLimits limits;
  limits.max_pieces = 100;
  EXPECT_THROW(gp::cousin_partition(gp::constant_gauge(1e-3), dom, limits),
               gp::PartitionLimitExceeded);
  EXPECT_NO_THROW(gp::cousin_partition(gp::constant_gauge(0.1), dom, limits));
}

TEST(CousinPartition, InvalidGaugePropagates) {
  const gp::Gauge g([](double t) { return gp::GaugeWidths{t, t}; });  // zero at t = 0
  EXPECT_THROW(gp::cousin_partition(g, gp::Interval(0.0, 1.0)), gp::InvalidGauge);
}

// ---- riemann_sum_scalar ----

TEST(RiemannSum, LinearMidpointExample) {
  const gp::TaggedDivision d({0.0, 0.5, 1.0}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(gp::riemann_sum_scalar([](double t) { return t; }, d), 0.5);
}

TEST(RiemannSum, SquareLeftTagsOnFourPieces) {
  const gp::TaggedDivision d({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.25, 0.5, 0.75});
  // (0 + 1 + 4 + 9) / 16 * 1/4
  EXPECT_DOUBLE_EQ(gp::riemann_sum_scalar([](double t) { return t * t; }, d), 14.0 / 64.0);
}

TEST(RiemannSum, ConstantTelescopesWithinFourUlpPerPiece) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = gp::testing::uniform(rng, -10.0, 10.0);
    const double b = a + gp::testing::uniform(rng, 0.01, 20.0);
    const double c = gp::testing::uniform(rng, -5.0, 5.0);
    const auto d = random_division(rng, gp::Interval(a, b), 1 + rng() % 500);
    const double s = gp::riemann_sum_scalar([c](double) { return c; }, d);
    const double expected = c * (b - a);
    EXPECT_LE(std::abs(s - expected),
              4.0 * static_cast<double>(d.size()) * gp::testing::ulp(expected));
  }
}

TEST(RiemannSum, NonFiniteValueCarriesTag) {
  const gp::TaggedDivision d({0.0, 0.5, 1.0}, {0.0, 1.0});
  try {
    gp::riemann_sum_scalar([](double t) { return 1.0 / t; }, d);
    FAIL() << "expected EvaluationError";
  } catch (const gp::EvaluationError& e) {
    EXPECT_EQ(e.t(), 0.0);
    EXPECT_EQ(e.outcome(), gp::EvaluationError::kNoOutcome);
  }
}

// ---- kh_integrate ----

TEST(KhIntegrate, Constant) {
  const auto r = gp::kh_integrate([](double) { return 2.0; }, gp::Interval(0.0, 3.0), 1e-9);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.value, 6.0);
  EXPECT_LE(r.refinement_levels, 2);
}

TEST(KhIntegrate, Square) {
  const auto r = gp::kh_integrate([](double t) { return t * t; }, gp::Interval(0.0, 1.0), 1e-9);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-9);
  EXPECT_GT(r.final_mesh_bound, 0.0);
  ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(r.refinement_levels));
  EXPECT_LE(std::abs(r.trace.back().sum - r.trace[r.trace.size() - 2].sum), 1e-9);
}

TEST(KhIntegrate, OscillatingDerivativeUnderSingularFamily) {
  const auto& e = gp::scalar_entry("fprime-oscillating");
  const auto r = gp::kh_integrate(e.fn, e.domain, 1e-6, e.family(e.domain, 1e-6));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sin(1.0), 1e-6);
}

TEST(KhIntegrate, UniformFamilyUsesMidpointsOnNonDyadicDomains) {
  const gp::Interval dom(0.0, std::numbers::pi);
  for (int m = 0; m < 12; ++m) {
    const auto d = gp::cousin_partition(gp::uniform_family(dom)(m), dom);
    ASSERT_EQ(d.size(), std::size_t{1} << (m + 1));
    for (std::size_t i = 0; i < d.size(); ++i)
      ASSERT_EQ(d.tag(i), d.left(i) + d.length(i) / 2.0);
  }
}

TEST(KhIntegrate, LevelCapIsReportedInBand) {
  gp::QuadratureOptions o;
  o.tol = 1e-12;
  o.max_levels = 3;
  const auto r = gp::kh_integrate([](double t) { return t * t; }, gp::Interval(0.0, 1.0), o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.refinement_levels, 3);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-2);
}

TEST(KhIntegrate, RejectsBadOptions) {
  const gp::ScalarFn f = [](double t) { return t; };
  EXPECT_THROW(gp::kh_integrate(f, gp::Interval(0.0, 1.0), 0.0), gp::InvalidArgument);
  EXPECT_THROW(gp::kh_integrate(f, gp::Interval(0.0, 1.0), -1.0), gp::InvalidArgument);
  gp::QuadratureOptions o;
  o.max_levels = 0;
  EXPECT_THROW(gp::kh_integrate(f, gp::Interval(0.0, 1.0), o), gp::InvalidArgument);
}

TEST(KhIntegrate, EvaluationErrorPropagates) {
  EXPECT_THROW(gp::kh_integrate([](double t) { return t > 0.3 ? NAN : 1.0; },
                                gp::Interval(0.0, 1.0), 1e-9),
               gp::EvaluationError);
}

// Random polynomials of degree <= 5 against a long double antiderivative.
TEST(KhIntegrate, PolynomialsMatchAntiderivativeWithinTenTol) {
  std::mt19937_64 rng(19);
  const double tol = 1e-9;
  for (int trial = 0; trial < 12; ++trial) {
    const int degree = trial % 6;
    std::vector<double> c(degree + 1);
    for (double& x : c) x = gp::testing::uniform(rng, -3.0, 3.0);
    const double a = gp::testing::uniform(rng, -2.0, 1.0);
    const double b = a + gp::testing::uniform(rng, 0.5, 2.0);
    const gp::ScalarFn p = [c](double t) {
      double y = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) y = y * t + *it;
      return y;
    };
    auto P = [&c](long double t) {
      long double y = 0.0L;
      for (std::size_t k = c.size(); k-- > 0;) y = y * t + c[k] / static_cast<long double>(k + 1);
      return y * t;
    };
    const double exact = static_cast<double>(P(b) - P(a));
    const auto r = gp::kh_integrate(p, gp::Interval(a, b), tol);
    EXPECT_TRUE(r.converged) << "degree " << degree;
    EXPECT_NEAR(r.value, exact, 10.0 * tol) << "degree " << degree << " on [" << a << ", " << b << "]";
  }
}

TEST(KhIntegrate, FiniteSetIndicatorUnderPinchingFamilyIsZero) {
  std::mt19937_64 rng(20);
  const gp::Interval dom(0.0, 1.0);
  const double tol = 1e-9;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s;
    const std::size_t n = 1 + rng() % 200;
    for (std::size_t i = 0; i < n; ++i)
      s.push_back(trial % 2 ? gp::testing::uniform(rng, 0.0, 1.0)
                            : static_cast<double>(rng() % 1025) / 1024.0);
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const gp::ScalarFn ind = [sorted](double t) {
      return std::binary_search(sorted.begin(), sorted.end(), t) ? 1.0 : 0.0;
    };
    const auto r = gp::kh_integrate(ind, dom, tol, gp::pinching_family(s, dom, tol));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(std::abs(r.value), tol) << "trial " << trial;
  }
}

// ---- scalar catalog ----

TEST(ScalarCatalog, ClosedFormsAtTolOneEMinusNine) {
  for (const auto& [id, e] : gp::scalar_catalog()) {
    if (!e.exact || id == "fprime-oscillating") continue;
    const auto r = gp::kh_integrate(e.fn, e.domain, 1e-9, e.family(e.domain, 1e-9));
    EXPECT_TRUE(r.converged) << id;
    EXPECT_NEAR(r.value, *e.exact, 1e-8) << id;
  }
}

TEST(ScalarCatalog, SupBoundsHoldOnAFineGrid) {
  for (const auto& [id, e] : gp::scalar_catalog()) {
    if (!std::isfinite(e.sup_abs)) continue;
    for (int k = 0; k <= 4096; ++k) {
      const double t = e.domain.lower() + e.domain.width() * k / 4096.0;
      ASSERT_LE(std::abs(e.fn(t)), e.sup_abs * (1.0 + 1e-12)) << id << " at t=" << t;
    }
  }
}

TEST(ScalarCatalog, IndicatorSetHasOneHundredDistinctPoints) {
  auto s = gp::indicator100_points();
  std::sort(s.begin(), s.end());
  EXPECT_EQ(std::unique(s.begin(), s.end()) - s.begin(), 100);
  const auto& e = gp::scalar_entry("indicator100");
  for (double t : s) EXPECT_EQ(e.fn(t), 1.0);
  EXPECT_EQ(e.fn(1.0 / 3.0), 0.0);
}

TEST(ScalarCatalog, UnknownIdIsCatalogMiss) {
  EXPECT_THROW(gp::scalar_entry("nope"), gp::CatalogMiss);
}
