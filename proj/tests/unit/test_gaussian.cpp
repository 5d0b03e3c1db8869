#include "capbound/gaussian.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace capbound;

namespace {

GaussianParams reference() {
  GaussianParams p;
  p.s1 = p.s2 = 100;
  p.i1 = p.i2 = 10;
  p.c = 10;
  return p;
}

GaussianParams random_params(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> expo(0.05, 4.0), phase(0.0, 2 * std::numbers::pi);
  GaussianParams p;
  p.s1 = std::pow(10.0, expo(rng));
  p.s2 = std::pow(10.0, expo(rng));
  p.i1 = std::pow(10.0, expo(rng));
  p.i2 = std::pow(10.0, expo(rng));
  p.c = std::pow(10.0, expo(rng));
  p.theta1 = phase(rng);
  p.theta2 = phase(rng);
  return p;
}

double bits_at(const GaussianParams &p, cplx rho, BoundId id) {
  return eval_bound_at_rho(p, InputCorrelation(rho), id).bits.value();
}

} // namespace

TEST(Covariance, IndependentInputs) {
  auto p = reference();
  auto k = covariance(p, InputCorrelation(0.0));
  EXPECT_NEAR(k(Signal::Y1, Signal::Y1).real(), 111.0, 1e-12);
  EXPECT_NEAR(std::abs(k(Signal::Y1, Signal::Yf) - cplx(std::sqrt(1000.0), 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(k(Signal::X1, Signal::X2)), 0.0, 1e-15);
}

TEST(Covariance, CoherentCombining) {
  auto k = covariance(reference(), InputCorrelation(1.0));
  double expect = 1.0 + std::pow(10.0 + std::sqrt(10.0), 2);
  EXPECT_NEAR(k(Signal::Y1, Signal::Y1).real(), expect, 1e-10);
}

TEST(Covariance, HermitianPsd) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mag(0, 1), ph(0, 6.28);
  for (int i = 0; i < 20; ++i) {
    auto k = covariance(random_params(rng), InputCorrelation::polar(mag(rng), ph(rng))).k;
    EXPECT_LE((k - k.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(k)};
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9 * es.eigenvalues().maxCoeff());
  }
}

TEST(Covariance, RhoAboveOneIsDomainError) {
  try {
    covariance(reference(), InputCorrelation(cplx(0.9, 0.5)));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(GaussianEntropy, UnitNoise) {
  EXPECT_NEAR(kComplexGaussianOffset, 3.094192, 1e-6);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    auto cov = covariance(random_params(rng), InputCorrelation::polar(0.3 * i / 10.0, i));
    EXPECT_NEAR(gaussian_cond_entropy(cov, {Signal::Y2}, {Signal::X1, Signal::X2}),
                kComplexGaussianOffset, 1e-9);
  }
}

TEST(GaussianEntropy, ScalarMutualInformation) {
  auto cov = covariance(reference(), InputCorrelation(0.0));
  double mi = gaussian_cond_entropy(cov, {Signal::Y2}, {Signal::X1}) -
              gaussian_cond_entropy(cov, {Signal::Y2}, {Signal::X1, Signal::X2});
  EXPECT_NEAR(mi, 6.658211, 1e-6);
}

TEST(GaussianEntropy, OverlapIsDomainError) {
  auto cov = covariance(reference(), InputCorrelation(0.0));
  EXPECT_THROW(gaussian_cond_entropy(cov, {Signal::Y1}, {Signal::Y1}), Error);
}

TEST(EvalAtRho, ReferenceValues) {
  auto p = reference();
  EXPECT_NEAR(bits_at(p, 0.0, BoundId::cutset_r1), 6.794416, 1e-6);
  EXPECT_NEAR(bits_at(p, 1.0, BoundId::cutset_r1), 7.444978, 1e-6);
  EXPECT_NEAR(bits_at(p, 0.0, BoundId::cutset_r2), 6.658211, 1e-6);
  auto bs = eval_bounds_at_rho(p, InputCorrelation(0.0));
  EXPECT_FALSE(bs.has(BoundId::fb_r1_plus_two_r2));
}

TEST(EvalAtRho, ScalarOracleAgreement) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mag(0, 1), ph(0, 2 * std::numbers::pi);
  for (int i = 0; i < 50; ++i) {
    auto p = random_params(rng);
    cplx rho = std::polar(mag(rng), ph(rng));
    EXPECT_NEAR(bits_at(p, rho, BoundId::cutset_r1),
                oracle::scalar_cutset_r1(p.s1, p.i2, p.theta2, rho), 1e-8);
    EXPECT_NEAR(bits_at(p, rho, BoundId::cutset_r2), oracle::scalar_cutset_r2(p.s2, rho), 1e-8);
    EXPECT_NEAR(bits_at(p, rho, BoundId::cutset_r1_coop),
                oracle::scalar_cutset_r1_coop(p.s1, p.c, rho), 1e-8);
  }
}

TEST(EvalAtRho, OffsetCancels) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 10; ++i) {
    auto p = random_params(rng);
    auto rho = InputCorrelation::polar(0.7, 1.1 * i);
    auto a = eval_bounds_at_rho(p, rho);
    auto b = eval_bounds_at_rho(p, rho, 0.0);
    for (BoundId id : kGaussianBounds)
      EXPECT_NEAR(a.value(id), b.value(id), 1e-9);
  }
}

TEST(MaxOverRho, DegenerateGrid) {
  auto p = reference();
  p.theta2 = 0.4;
  auto bs = max_over_rho(p, RhoGrid{2, 1, false});
  for (BoundId id : kGaussianBounds) {
    double expect = std::max(bits_at(p, 0.0, id), bits_at(p, 1.0, id));
    EXPECT_DOUBLE_EQ(bs.value(id), expect) << to_string(id);
    double m = std::abs(*bs[id].argmax_rho);
    EXPECT_TRUE(m == 0.0 || m == 1.0);
  }
}

TEST(MaxOverRho, CutsetArgmaxima) {
  auto p = reference();
  auto bs = max_over_rho(p);
  EXPECT_NEAR(std::abs(*bs[BoundId::cutset_r2].argmax_rho), 0.0, 1e-12);
  EXPECT_NEAR(bs.value(BoundId::cutset_r2), std::log2(101.0), 1e-9);
  EXPECT_NEAR(std::abs(*bs[BoundId::cutset_r1].argmax_rho - cplx(1.0, 0.0)), 0.0, 1e-6);
  EXPECT_NEAR(bs.value(BoundId::cutset_r1), closed_form_bounds(p).value(BoundId::cutset_r1), 1e-6);
}

TEST(MaxOverRho, ThreadCountDoesNotChangeResult) {
  auto p = reference();
  p.theta1 = 0.3;
  auto a = max_over_rho(p);
  setenv("CAPBOUND_THREADS", "1", 1);
  auto b = max_over_rho(p);
  unsetenv("CAPBOUND_THREADS");
  for (BoundId id : kGaussianBounds)
    EXPECT_EQ(a.value(id), b.value(id));
}

TEST(ClosedForm, ReferenceValues) {
  auto bs = closed_form_bounds(reference());
  EXPECT_NEAR(bs.value(BoundId::cutset_r1_coop), 6.794416, 1e-6);
  EXPECT_NEAR(bs.value(BoundId::cutset_r1), 7.444978, 1e-6);
  EXPECT_NEAR(bs.value(BoundId::cutset_r2), 6.658211, 1e-6);
  EXPECT_NEAR(bs.value(BoundId::sum_tuni1), 10.904, 1e-3);
  EXPECT_NEAR(bs.value(BoundId::sum_tuni2), 10.780, 1e-3);
  EXPECT_NEAR(bs.value(BoundId::sum_pv), 13.436, 1e-3);
  EXPECT_NEAR(bs.value(BoundId::two_r1_plus_r2), 18.016, 1e-3);
  EXPECT_NEAR(bs.value(BoundId::r1_plus_two_r2), 15.944, 1e-3);
}

TEST(ClosedForm, HandEvaluation) {
  auto bs = closed_form_bounds(reference());
  double b9 = std::log2(1 + std::pow(10 + std::sqrt(10.0), 2));
  EXPECT_NEAR(bs.value(BoundId::two_r1_plus_r2),
              b9 + std::log2(11.0) + 1 + std::log2(1 + 100.0 / 21) + std::log2(12.0), 1e-12);
  EXPECT_NEAR(bs.value(BoundId::sum_pv),
              std::log2(21.0) + std::log2(12.0) + std::log2(11.0) + 2, 1e-12);
}

TEST(ClosedForm, GatedBelowUnitGains) {
  auto p = reference();
  p.c = 0.5;
  auto bs = closed_form_bounds(p);
  for (BoundId id : {BoundId::sum_pv, BoundId::two_r1_plus_r2, BoundId::r1_plus_two_r2}) {
    EXPECT_FALSE(bs.has(id));
    EXPECT_EQ(bs[id].reason, reason::requires_gains_above_one);
  }
  EXPECT_TRUE(bs.has(BoundId::sum_tuni1));
}

TEST(GaussianProperties, ClosedFormDominatesPerRho) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 10; ++n) {
    auto p = random_params(rng);
    auto cf = closed_form_bounds(p);
    for (int k = 0; k <= 20; ++k)
      for (int j = 0; j < 16; ++j) {
        auto at = eval_bounds_at_rho(p, InputCorrelation::polar(k / 20.0, 2 * std::numbers::pi * j / 16));
        for (BoundId id : kGaussianBounds)
          if (cf.has(id)) {
            EXPECT_GE(cf.value(id), at.value(id) - 1e-6) << to_string(id);
          }
      }
  }
}

TEST(GaussianProperties, CutsetR2PhaseInvariantAtZeroRho) {
  auto p = reference();
  double base = bits_at(p, 0.0, BoundId::cutset_r2);
  for (double t : {0.5, 1.7, 3.0, 5.5}) {
    p.theta1 = t;
    p.theta2 = 2 * t;
    EXPECT_NEAR(bits_at(p, 0.0, BoundId::cutset_r2), base, 1e-10);
  }
}

TEST(GaussianProperties, VanishingCooperation) {
  auto p = reference();
  p.c = 1e-12;
  EXPECT_NEAR(closed_form_bounds(p).value(BoundId::cutset_r1_coop), std::log2(101.0), 1e-9);
}
