#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace kstab;

namespace {

DivisorClass family(const SurfaceModel& s, const Rational& lambda) {
  return parse_divisor("3H - E1 - ... - E7", 8) - lambda * s.E(8);
}

StabilityCertificate dp1_check(const SurfaceModel& s, const Rational& lambda) {
  return check_criterion(s, family(s, lambda), dp1_alpha_lower(s, ExactScalar(lambda)), kDp1Provenance);
}

// Rationals within 1/2000 on either side of an irrational endpoint, checked exactly.
std::pair<Rational, Rational> straddle(const ExactScalar& x) {
  long k = static_cast<long>(std::floor(x.approx() * 2000));
  Rational below(k, 2000), above(k + 1, 2000);
  EXPECT_LT(ExactScalar(below), x);
  EXPECT_GT(ExactScalar(above), x);
  return {below, above};
}

}  // namespace

TEST(Slope, Examples) {
  for (int r = 0; r <= 8; ++r) {
    SurfaceModel s(r);
    EXPECT_EQ(slope(s, s.anticanonical()), ExactScalar(1)) << r;
  }
  SurfaceModel s(8);
  EXPECT_EQ(slope(s, Rational(2) * s.anticanonical()), ExactScalar(Rational(1, 2)));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    Rational lambda = abs(oracle::random_rational(rng, 13, 10));
    if (lambda * lambda == 2) continue;
    if (lambda * lambda > 2) lambda = lambda / 10;
    EXPECT_EQ(slope(s, family(s, lambda)), ExactScalar((2 - lambda) / (2 - lambda * lambda)));
  }
  EXPECT_THROW(slope(s, s.E(1)), std::domain_error);
}

TEST(CheckCriterion, AnticanonicalIsCertified) {
  SurfaceModel s(8);
  auto cert = check_criterion(s, s.anticanonical(), ExactScalar(1), "alpha(-K) = 1");
  EXPECT_EQ(cert.verdict, Verdict::KStableCertified);
  EXPECT_EQ(cert.threshold, ExactScalar(Rational(2, 3)));
  EXPECT_EQ(cert.condition_i.margin, ExactScalar(Rational(1, 3)));
  EXPECT_EQ(cert.condition_ii.tested_class, Rational(1, 3) * s.anticanonical());
  EXPECT_TRUE(cert.condition_ii.nef);
  EXPECT_FALSE(cert.beta);
  EXPECT_EQ(cert.hypotheses.back(), "alpha lower bound: alpha(-K) = 1");
}

TEST(CheckCriterion, BeyondUpperEndpointFailsConditionII) {
  SurfaceModel s(8);
  auto cert = dp1_check(s, Rational(6, 5));
  EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
  EXPECT_TRUE(cert.condition_i.pass);  // 1 > 20/21
  EXPECT_EQ(cert.slope, ExactScalar(Rational(10, 7)));
  EXPECT_FALSE(cert.condition_ii.nef);
  ASSERT_TRUE(cert.condition_ii.witness);
  EXPECT_EQ(*cert.condition_ii.witness, s.E(8));
  EXPECT_EQ(intersect(cert.condition_ii.tested_class, s.E(8)), Rational(-1, 7));
}

TEST(CheckCriterion, ZeroAlphaAndErrors) {
  SurfaceModel s(8);
  auto cert = check_criterion(s, family(s, 1), ExactScalar(0));
  EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
  EXPECT_EQ(cert.condition_i.margin, -cert.threshold);
  auto exact = check_criterion(s, family(s, 1), ExactScalar(Rational(2, 3)));
  EXPECT_FALSE(exact.condition_i.pass);
  EXPECT_EQ(exact.verdict, Verdict::Inconclusive);
  try {
    check_criterion(s, family(s, Rational(3, 2)), ExactScalar(1));
    FAIL() << "expected not_ample";
  } catch (const not_ample& e) {
    ASSERT_TRUE(e.witness());
    auto L = family(s, Rational(3, 2));
    EXPECT_LE(intersect(L, *e.witness()), 0);
    EXPECT_EQ(intersect(*e.witness(), *e.witness()), -1);
  }
  EXPECT_THROW(check_criterion(s, s.anticanonical(), ExactScalar(-1)), std::invalid_argument);
  EXPECT_THROW(check_criterion(s, SurfaceModel(2).H(), ExactScalar(1)), std::invalid_argument);
}

TEST(CheckLogCriterion, Examples) {
  SurfaceModel s(8);
  for (int k = 0; k <= 20; ++k) {
    Rational beta(k, 20);
    auto cert = check_log_criterion(s, s.anticanonical(), ExactScalar(Rational(1, 2)), beta);
    EXPECT_EQ(cert.condition_i.pass, beta < Rational(3, 4)) << beta.str();
    EXPECT_EQ(cert.condition_i.threshold, ExactScalar(beta * Rational(2, 3)));
  }
  auto c = check_log_criterion(s, family(s, 1), ExactScalar(Rational(1, 3)), Rational(1, 4));
  EXPECT_EQ(c.condition_i.threshold, ExactScalar(Rational(1, 6)));
  EXPECT_EQ(c.verdict, Verdict::KStableCertified);
  ASSERT_TRUE(c.beta);
  EXPECT_EQ(*c.beta, Rational(1, 4));
  EXPECT_THROW(check_log_criterion(s, family(s, 1), ExactScalar(1), Rational(5, 4)), std::invalid_argument);
  EXPECT_THROW(check_log_criterion(s, family(s, 1), ExactScalar(1), -1), std::invalid_argument);
}

TEST(CheckLogCriterion, BetaOneMatchesPlainCriterion) {
  std::mt19937_64 rng(43);
  SurfaceModel s(8);
  int checked = 0;
  while (checked < 100) {
    Rational lambda = abs(oracle::random_rational(rng, 13, 10));
    if (lambda == 0 || lambda >= Rational(4, 3)) continue;
    Rational a = abs(oracle::random_rational(rng, 10, 9));
    auto L = family(s, lambda);
    auto plain = check_criterion(s, L, ExactScalar(a), "p");
    auto log = check_log_criterion(s, L, ExactScalar(a), 1, "p");
    EXPECT_EQ(log.beta, Rational(1));
    log.beta.reset();
    EXPECT_EQ(log, plain);
    ++checked;
  }
}

TEST(MaxCertifiedBeta, Examples) {
  SurfaceModel s(8);
  auto capped = max_certified_beta(s, s.anticanonical(), ExactScalar(1));
  EXPECT_TRUE(capped.certified);
  EXPECT_EQ(capped.value, ExactScalar(1));
  EXPECT_TRUE(capped.attained);
  auto open = max_certified_beta(s, s.anticanonical(), ExactScalar(Rational(1, 2)));
  EXPECT_TRUE(open.certified);
  EXPECT_EQ(open.value, ExactScalar(Rational(3, 4)));
  EXPECT_FALSE(open.attained);
  auto edge = max_certified_beta(s, family(s, 1), ExactScalar(Rational(2, 3)));
  EXPECT_EQ(edge.value, ExactScalar(1));
  EXPECT_FALSE(edge.attained);  // beta = 1 needs 2/3 > 2/3
  auto none = max_certified_beta(s, family(s, Rational(6, 5)), ExactScalar(1));
  EXPECT_FALSE(none.certified);
  ASSERT_TRUE(none.witness);
  EXPECT_EQ(*none.witness, s.E(8));
}

TEST(MaxCertifiedBeta, MonotoneInAlpha) {
  SurfaceModel s(8);
  ExactScalar prev(0);
  for (int k = 0; k <= 40; ++k) {
    auto v = max_certified_beta(s, family(s, Rational(1, 2)), ExactScalar(Rational(k, 20))).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(ClassifyNumericalType, Examples) {
  SurfaceModel s(8);
  EXPECT_EQ(classify_numerical_type(s, s.anticanonical()), NumericalType::Fano);
  EXPECT_EQ(classify_numerical_type(ExactScalar(0), false, true), NumericalType::CalabiYau);
  EXPECT_EQ(classify_numerical_type(ExactScalar(-1), false, true), NumericalType::Inapplicable);
  EXPECT_EQ(classify_numerical_type(s, family(s, Rational(6, 5))), NumericalType::Inapplicable);
  EXPECT_EQ(to_string(NumericalType::CalabiYau), "CalabiYau");
}

TEST(OpennessMargins, Examples) {
  SurfaceModel s(8);
  auto cert = dp1_check(s, 1);
  ASSERT_EQ(cert.verdict, Verdict::KStableCertified);
  auto rep = openness_margins(s, cert);
  EXPECT_TRUE(rep.strict_i);
  EXPECT_TRUE(rep.strict_ii);
  EXPECT_EQ(rep.margin_i, ExactScalar(Rational(1, 3)));
  EXPECT_TRUE(rep.open_under_perturbation);
  EXPECT_EQ(rep.annotation, "K-stability open under perturbation of L");

  auto not_cert = openness_margins(s, dp1_check(s, Rational(6, 5)));
  EXPECT_FALSE(not_cert.open_under_perturbation);
  EXPECT_EQ(not_cert.annotation, "not certified");

  // At the upper endpoint the E8 pairing of the tested class, cleared of
  // the positive factor 3 L^2, is 6 - 4l - l^2 and vanishes exactly.
  ExactScalar l = ExactScalar::sqrt(10) - ExactScalar(2);
  EXPECT_EQ(ExactScalar(6) - ExactScalar(4) * l - l * l, ExactScalar(0));
}

TEST(OpennessMargins, NefButNotAmpleBoundary) {
  SurfaceModel p2(0);
  auto rep = openness_margins(p2, check_criterion(p2, p2.H(), ExactScalar(100)));
  EXPECT_TRUE(rep.strict_ii);
  // Synthetic certificate whose tested class H is nef but not ample on Bl_1 P^2.
  SurfaceModel f1(1);
  StabilityCertificate cert;
  cert.verdict = Verdict::KStableCertified;
  cert.condition_i.margin = ExactScalar(Rational(1, 5));
  cert.condition_i.pass = true;
  cert.condition_ii.tested_class = f1.H();
  cert.condition_ii.nef = true;
  auto r = openness_margins(f1, cert);
  EXPECT_TRUE(r.strict_i);
  EXPECT_FALSE(r.strict_ii);
  ASSERT_TRUE(r.ample_witness);
  EXPECT_EQ(*r.ample_witness, f1.E(1));
  EXPECT_FALSE(r.open_under_perturbation);
  EXPECT_EQ(r.annotation, "certified on the nef boundary of condition (ii); openness not guaranteed");
}

TEST(StabilityProperty, VerdictInvariantUnderScaling) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> rpick(2, 8), small(-1, 1);
  int done = 0;
  while (done < 50) {
    int r = rpick(rng);
    SurfaceModel s(r);
    auto L = Rational(2) * s.anticanonical();
    L = L + Rational(small(rng)) * s.H();
    for (int i = 1; i <= r; ++i) L = L + Rational(small(rng), 2) * s.E(i);
    if (!is_ample(s, L).holds) continue;
    Rational c = abs(oracle::random_rational(rng, 9, 7));
    if (c == 0) continue;
    ExactScalar a(abs(oracle::random_rational(rng, 6, 5)));
    auto base = check_criterion(s, L, a);
    auto scaled = check_criterion(s, c * L, a / ExactScalar(c));
    EXPECT_EQ(base.verdict, scaled.verdict);
    EXPECT_EQ(scaled.condition_i.margin, base.condition_i.margin / ExactScalar(c));
    EXPECT_EQ(scaled.condition_ii.tested_class, base.condition_ii.tested_class);
    ++done;
  }
}

TEST(StabilityProperty, Dp1ProbesAroundEndpoints) {
  SurfaceModel s(8);
  auto lo = (ExactScalar(10) - ExactScalar::sqrt(10)) / ExactScalar(9);
  auto hi = ExactScalar::sqrt(10) - ExactScalar(2);
  auto [lo_out, lo_in] = straddle(lo);
  auto [hi_in, hi_out] = straddle(hi);
  EXPECT_EQ(dp1_check(s, lo_in).verdict, Verdict::KStableCertified);
  EXPECT_EQ(dp1_check(s, hi_in).verdict, Verdict::KStableCertified);
  EXPECT_EQ(dp1_check(s, lo_out).verdict, Verdict::Inconclusive);
  EXPECT_EQ(dp1_check(s, hi_out).verdict, Verdict::Inconclusive);
  EXPECT_FALSE(dp1_check(s, lo_out).condition_ii.nef);
  EXPECT_FALSE(dp1_check(s, hi_out).condition_ii.nef);
  for (int k = 1; k < 40; ++k) {
    Rational t = Rational(k, 30);
    bool inside = ExactScalar(t) > lo && ExactScalar(t) < hi;
    EXPECT_EQ(dp1_check(s, t).verdict == Verdict::KStableCertified, inside) << t.str();
  }
}
