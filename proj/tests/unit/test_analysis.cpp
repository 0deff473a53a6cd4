#include <gtest/gtest.h>

#include <cmath>

#include "pagecurve/analysis.hpp"
#include "pagecurve/csv.hpp"
#include "pagecurve/errors.hpp"

using namespace pagecurve;

namespace {

EntanglementRecord two_level(double t, double l1, double l2, int s1 = -1, int s2 = -1) {
  EntanglementRecord r;
  r.time = t;
  r.decayed_fraction = 0.01 * t;
  r.levels = {make_level(l1, s1), make_level(l2, s2)};
  return r;
}

// Curves built to collapse exactly under (a, b, c).
std::vector<CollapseSeries> manufactured(double a, double b, double c, double dt = 0.01) {
  std::vector<CollapseSeries> out;
  for (int M = 3; M <= 7; ++M) {
    CollapseSeries s;
    s.M = M;
    const double tau_c = 2.3 * std::pow(static_cast<double>(M), -1.0 / c);
    s.t_c = tau_c * M;
    for (int k = 0; k * dt <= s.t_c + 2.0; ++k) {
      const double t = k * dt;
      const double X = (t / M - tau_c) * std::pow(M, 1.0 / c);
      const double F = 0.5 + 0.3 * X + 0.1 * X * X;
      const double G = 0.4 + 0.2 * std::tanh(X);
      s.time.push_back(t);
      s.decayed_fraction.push_back(F * std::pow(M, -b / c));
      s.s_min.push_back(M * G * std::pow(M, -a));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST(DetectKinks, SyntheticLinearCrossing) {
  std::vector<EntanglementRecord> rec;
  for (int k = 0; k <= 1000; ++k) {
    const double t = k * 0.02;
    rec.push_back(two_level(t, 0.6 - 0.01 * t, 0.4 + 0.01 * t));
  }
  const auto kinks = detect_kinks(rec);
  ASSERT_EQ(kinks.size(), 1u);
  EXPECT_NEAR(kinks[0].t_c, 10.0, 1e-12);
  EXPECT_NEAR(kinks[0].decayed_fraction, 0.1, 1e-12);
  EXPECT_EQ(kinks[0].ordinal, 1);
  EXPECT_EQ(kinks[0].upper_level, 1);
  EXPECT_EQ(kinks[0].lower_level, 2);
}

TEST(DetectKinks, CrossingBetweenSamples) {
  std::vector<EntanglementRecord> rec;
  for (int k = 0; k <= 70; ++k) {
    const double t = k * 0.3;
    rec.push_back(two_level(t, 0.6 - 0.01 * t, 0.4 + 0.01 * t));
  }
  const auto kinks = detect_kinks(rec);
  ASSERT_EQ(kinks.size(), 1u);
  EXPECT_NEAR(kinks[0].t_c, 10.0, 1e-12);
}

TEST(DetectKinks, MonotoneGapHasNoCrossing) {
  std::vector<EntanglementRecord> rec;
  for (int k = 0; k <= 100; ++k) rec.push_back(two_level(k * 0.1, 0.9 - 0.001 * k, 0.05));
  EXPECT_TRUE(detect_kinks(rec).empty());
}

TEST(DetectKinks, SortedLevelsUseSectorLabels) {
  // Sorted output touches but never crosses; the sector of the top level flips.
  std::vector<EntanglementRecord> rec;
  for (int k = 0; k <= 70; ++k) {
    const double t = k * 0.3;
    const double a = 0.6 - 0.01 * t, b = 0.4 + 0.01 * t;
    rec.push_back(a >= b ? two_level(t, a, b, 3, 2) : two_level(t, b, a, 2, 3));
  }
  const auto kinks = detect_kinks(rec);
  ASSERT_EQ(kinks.size(), 1u);
  EXPECT_NEAR(kinks[0].t_c, 10.0, 1e-12);
  EXPECT_EQ(kinks[0].sector_before, 3);
  EXPECT_EQ(kinks[0].sector_after, 2);
  EXPECT_NEAR(kinks[0].decayed_fraction, 0.1, 1e-12);
}

TEST(DetectKinks, OrdinalsFollowTime) {
  std::vector<EntanglementRecord> rec;
  for (int k = 0; k <= 400; ++k) {
    const double t = k * 0.05;
    rec.push_back(two_level(t, 0.5 + 0.1 * std::sin(t), 0.5 - 0.1 * std::sin(t)));
  }
  const auto kinks = detect_kinks(rec);
  ASSERT_GE(kinks.size(), 5u);
  for (std::size_t i = 0; i < kinks.size(); ++i) {
    EXPECT_EQ(kinks[i].ordinal, static_cast<int>(i) + 1);
    EXPECT_NEAR(kinks[i].t_c, M_PI * (i + 1), 1e-3);
  }
}

TEST(DetectKinks, NeedsTwoLevels) {
  std::vector<EntanglementRecord> rec(3);
  for (auto& r : rec) r.levels = {make_level(1.0, 0)};
  EXPECT_THROW(detect_kinks(rec), InputError);
  EXPECT_TRUE(detect_kinks(std::vector<EntanglementRecord>{}).empty());
}

TEST(DetectSlopeKinks, FindsKinkWithinOneStep) {
  std::vector<double> t, y;
  for (int k = 0; k <= 500; ++k) {
    t.push_back(k * 0.02);
    y.push_back(std::abs(t.back() - 3.013) * 0.7 + 0.1 * t.back() * t.back());
  }
  const auto kinks = detect_slope_kinks(t, y);
  ASSERT_EQ(kinks.size(), 1u);
  EXPECT_NEAR(kinks[0].time, 3.013, 0.02);
  EXPECT_NEAR(kinks[0].slope_jump, 1.4, 0.05);
}

TEST(DetectSlopeKinks, SmoothCurveHasNone) {
  std::vector<double> t, y;
  for (int k = 0; k <= 500; ++k) {
    t.push_back(k * 0.02);
    y.push_back(std::sin(t.back()) + 0.1 * t.back() * t.back());
  }
  EXPECT_TRUE(detect_slope_kinks(t, y).empty());
}

TEST(PageTime, ParabolaVertex) {
  for (double dt : {0.02, 0.3, 0.7}) {
    std::vector<double> t, s;
    for (int k = 0; k * dt <= 20.0; ++k) {
      t.push_back(k * dt);
      s.push_back(t.back() * (20.0 - t.back()));
    }
    const auto r = detect_page_time(t, s, 4);
    EXPECT_NEAR(r.t_page, 10.0, 1e-9) << dt;
    EXPECT_NEAR(r.peak, 100.0, 1e-9);
    EXPECT_NEAR(r.peak_density, 25.0, 1e-9);
    EXPECT_FALSE(r.at_boundary);
  }
}

TEST(PageTime, EdgeMaximumCarriesWarning) {
  const std::vector<double> t{0, 1, 2, 3}, s{0, 1, 2, 3};
  const auto r = detect_page_time(t, s, 1);
  EXPECT_TRUE(r.at_boundary);
  EXPECT_FALSE(r.warning.empty());
  EXPECT_EQ(r.t_page, 3.0);
}

TEST(Collapse, RecoversUnitExponents) {
  const auto series = manufactured(1.0, 1.0, 1.0);
  const ScalingFit fit = fit_collapse(series);
  EXPECT_NEAR(fit.c, 1.0, 0.02);
  EXPECT_NEAR(fit.b, 1.0, 0.02);
  EXPECT_NEAR(fit.a, 1.0, 0.02);
  EXPECT_GT(fit.c, 0.0);
  EXPECT_LT(fit.cost_b, fit.baseline_b);
  EXPECT_LT(fit.cost_a, fit.baseline_a);
  EXPECT_EQ(fit.sizes, (std::vector<int>{3, 4, 5, 6, 7}));
}

TEST(Collapse, RecoversOtherExponents) {
  const auto series = manufactured(0.7, 1.3, 1.6);
  const ScalingFit fit = fit_collapse(series);
  EXPECT_NEAR(fit.c, 1.6, 0.02);
  EXPECT_NEAR(fit.b, 1.3, 0.02);
  EXPECT_NEAR(fit.a, 0.7, 0.02);
}

TEST(Collapse, Errors) {
  auto series = manufactured(1.0, 1.0, 1.0);
  EXPECT_THROW(fit_collapse(std::span(series).first(2)), InputError);
  for (auto& s : series) s.t_c = 0.5 * s.M;  // t_c / M constant
  EXPECT_THROW(fit_collapse(series), FitError);
  series[0].t_c = NAN;
  EXPECT_THROW(fit_collapse(series), FitError);
}

TEST(FitBeta, ManufacturedPowerLaw) {
  std::vector<double> t, y;
  for (int k = 0; k <= 400; ++k) {
    t.push_back(k * 0.01);
    y.push_back(t.back() > 2.0 ? 0.4 * std::pow(t.back() - 2.0, 0.5) : 0.0);
  }
  const auto fit = fit_beta(t, y, 2.0, 1.0);
  EXPECT_NEAR(fit.beta, 0.5, 1e-6);
  EXPECT_NEAR(fit.A, 0.4, 1e-6);
  EXPECT_NEAR(fit.loglog_beta, 0.5, 1e-6);
  EXPECT_EQ(fit.points, 100u);
  EXPECT_LT(fit.residual, 1e-9);
}

TEST(FitBeta, OffsetDataIsFitInLinearSpace) {
  // y = 0.42 x^0.51 plus tiny noise-free curvature: refinement leaves beta
  // near the generating value.
  std::vector<double> t, y;
  for (int k = 0; k <= 300; ++k) {
    t.push_back(k * 0.01);
    const double x = t.back() - 0.5;
    y.push_back(x > 0 ? 0.42 * std::pow(x, 0.51) + 0.001 * x * x : 0.0);
  }
  const auto fit = fit_beta(t, y, 0.5, 2.0);
  EXPECT_NEAR(fit.beta, 0.51, 0.01);
  EXPECT_NEAR(fit.A, 0.42, 0.01);
}

TEST(FitBeta, Errors) {
  const std::vector<double> t{0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y{0, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_THROW(fit_beta(t, y, 0.0, 3.0), FitError);  // 3 points
  const std::vector<double> bad{0, 1, 1, 0, 1, 1, 1, 1};
  EXPECT_THROW(fit_beta(t, bad, 0.0, 10.0), DomainError);
  EXPECT_NO_THROW(fit_beta(t, y, 0.0, 10.0));
}

TEST(Ansatz, CrossingValues) {
  EXPECT_EQ(format_number(ansatz_crossing(1000000)), "5e-07");
  EXPECT_DOUBLE_EQ(ansatz_crossing(1000000), 5e-7);
  EXPECT_DOUBLE_EQ(ansatz_crossing(2), 0.25);
  EXPECT_DOUBLE_EQ(ansatz_crossing(5), 0.1);
  EXPECT_THROW(ansatz_crossing(1), RangeError);
  EXPECT_THROW(ansatz_crossing(0), RangeError);
}

TEST(Ansatz, ClosedFormMatchesParticleNumber) {
  for (int M : {2, 3, 10, 1000})
    for (double lambda = 0.0; lambda <= 1.0; lambda += 0.05) {
      const double m = ansatz_particle_number(M, lambda);
      EXPECT_NEAR(1.0 - m / M, ansatz_decayed_fraction(M, lambda), 1e-14);
      EXPECT_GE(m, M - 1.0 - 1e-12);
      EXPECT_LE(m, M + 1e-12);
    }
}

TEST(Ansatz, VanishesLikeOneOverTwoM) {
  for (long long M = 2; M <= 100000000; M *= 7)
    EXPECT_NEAR(2.0 * M * ansatz_crossing(M), 1.0, 1e-14);
}
