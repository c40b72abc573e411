#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "musb/errors.hpp"
#include "musb/special.hpp"
#include "oracles.hpp"

using namespace musb;

TEST(GammaMu, BaseCasesAndRecursion) {
  EXPECT_DOUBLE_EQ(gamma_mu({0.0}, 4), 24.0);
  EXPECT_DOUBLE_EQ(gamma_mu({2.3}, 0), 1.0);
  EXPECT_DOUBLE_EQ(gamma_mu({1.0}, 3), 30.0);
}

TEST(GammaMu, MatchesPochhammerForm) {
  for (double mu : {0.0, 0.25, 1.0, 2.5})
    for (unsigned n = 0; n <= 20; ++n)
      EXPECT_NEAR(gamma_mu({mu}, n) / oracle::gamma_mu(mu, n), 1.0, 1e-12) << mu << " " << n;
}

TEST(GammaMu, DominatesFactorial) {
  for (double mu : {0.0, 0.5, 3.0})
    for (unsigned n = 0; n <= 15; ++n) EXPECT_GE(gamma_mu({mu}, n), std::tgamma(n + 1.0) * (1 - 1e-15));
}

TEST(GammaMu, Ratio) {
  const DeformParams p(0.7);
  EXPECT_NEAR(gamma_mu_ratio(p, 9, 4), gamma_mu(p, 9) / gamma_mu(p, 4), 1e-12 * gamma_mu(p, 9));
  EXPECT_DOUBLE_EQ(gamma_mu_ratio(p, 5, 5), 1.0);
}

TEST(EMu, SeriesBasics) {
  EXPECT_NEAR(std::real(e_mu_series({0.0}, 1.0)), std::numbers::e, 1e-14);
  EXPECT_EQ(e_mu_series({1.3}, 0.0), cplx(1.0));
  const cplx z(0.4, -1.1);
  EXPECT_NEAR(std::abs(e_mu_series({0.0}, z) - std::exp(z)), 0.0, 1e-14);
}

TEST(EMu, IntegralAgreesWithSeries) {
  EXPECT_NEAR(std::abs(e_mu_integral({1.0}, 1.0) - e_mu_series({1.0}, 1.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(e_mu_integral({1.0}, 0.0) - 1.0), 0.0, 1e-12);
  for (double x : {-3.0, -0.5, 0.7, 4.0}) {
    const cplx v = e_mu_integral({0.5}, x);
    EXPECT_GT(v.real(), 0.0);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
  }
}

TEST(EMu, NegativeRealPartKeepsRelativeAccuracy) {
  for (double mu : {0.0, 0.5, 1.0, 2.0})
    for (cplx z : {cplx(-12.0, 0.0), cplx(-8.8, 0.0), cplx(-5.0, 3.0)}) {
      const cplx ref = mu == 0.0 ? std::exp(z) : oracle::e_mu_integral(mu, z);
      EXPECT_NEAR(std::abs(e_mu_series({mu}, z) - ref) / std::abs(ref), 0.0, 1e-11) << mu << " " << z;
      EXPECT_NEAR(std::abs(e_mu({mu}, z) - ref) / std::abs(ref), 0.0, 1e-11);
    }
}

TEST(EMu, IntegralRequiresPositiveMu) { EXPECT_THROW(e_mu_integral({0.0}, 1.0), DomainError); }

TEST(EMu, RealArgumentBesselOracle) {
  for (double mu : {0.3, 0.5, 1.0, 2.5})
    for (double x : {-6.0, -1.0, 0.2, 3.0, 12.0, 20.0, 35.0}) {
      const double ref = oracle::e_mu_real(mu, x);
      const double got = std::real(e_mu({mu}, x));
      EXPECT_NEAR(got / ref, 1.0, 1e-10) << mu << " " << x;
    }
}

TEST(EMu, BoundedByExponential) {
  for (double mu : {0.0, 0.5, 2.0}) {
    for (double x = 0.0; x <= 30.0; x += 0.5)
      EXPECT_LE(std::real(e_mu({mu}, x)), std::exp(x) * (1.0 + 1e-12));
    for (double r : {0.5, 3.0, 9.0})
      EXPECT_LE(std::abs(e_mu({mu}, std::polar(r, 2.0))), std::exp(r) * (1.0 + 1e-12));
  }
}

TEST(EMu, PartsAcrossSeriesHankelSwitch) {
  // Both sides of |w| = 14.
  for (double mu : {0.5, 1.7})
    for (double r : {13.9, 14.1, 25.0}) {
      const cplx w = std::polar(r, 0.9);
      const auto parts = e_mu_parts({mu}, w);
      const cplx total = (parts.even + parts.odd) * std::exp(parts.log_scale);
      const cplx ref = e_mu_series({mu}, w, 1e-16);
      EXPECT_NEAR(std::abs(total - ref) / std::abs(ref), 0.0, 1e-9) << mu << " " << r;
      const cplx ref_int = oracle::e_mu_integral(mu, w);
      EXPECT_NEAR(std::abs(total - ref_int) / std::abs(ref_int), 0.0, 1e-8);
    }
}

TEST(HermiteMu, LowDegrees) {
  const DeformParams p(0.8);
  EXPECT_EQ(hermite_mu(p, 0), ComplexPoly{1.0});
  EXPECT_LT(max_coeff_diff(hermite_mu(p, 1), ComplexPoly{0.0, 2.0 / 2.6}), 1e-14);
  EXPECT_LT(max_coeff_diff(hermite_mu(p, 2), ComplexPoly{-2.0, 0.0, 4.0 / 2.6}), 1e-14);
}

TEST(HermiteMu, ReducesToHermiteAtZero) {
  // Physicists' H_4 = 16 t^4 - 48 t^2 + 12.
  EXPECT_LT(max_coeff_diff(hermite_mu({0.0}, 4), ComplexPoly{12.0, 0.0, -48.0, 0.0, 16.0}), 1e-12);
}

TEST(MacdonaldK, ClosedFormHalfOrder) {
  const double ref = std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0);
  EXPECT_NEAR(macdonald_k(0.5, 1.0), ref, 1e-15);
  EXPECT_NEAR(macdonald_k(0.5, 1.0), 0.4610685044478946, 1e-15);
  EXPECT_NEAR(macdonald_k_oracle(0.5, 1.0) / ref, 1.0, 1e-9);
}

TEST(MacdonaldK, EvenInOrder) { EXPECT_DOUBLE_EQ(macdonald_k(-0.7, 2.0), macdonald_k(0.7, 2.0)); }

TEST(MacdonaldK, LogarithmicNearZero) {
  // K_0(x) = log(2/x) - Euler gamma + O(x^2 log x).
  for (double x : {1e-4, 1e-8}) {
    EXPECT_NEAR(macdonald_k(0.0, x), std::log(2.0 / x) - std::numbers::egamma, 1e-7);
  }
  EXPECT_NEAR(macdonald_k(0.0, 1e-30) / std::log(2.0 / 1e-30), 1.0, 0.01);
}

TEST(MacdonaldK, AgainstBoostAndTrapezoid) {
  for (double a : {0.0, 0.3, 0.5, 1.5, 3.0, 4.7})
    for (double x : {1e-3, 0.05, 0.5, 1.9, 2.1, 7.9, 8.1, 30.0, 200.0}) {
      const double got = macdonald_k(a, x);
      EXPECT_NEAR(got / oracle::bessel_k(a, x), 1.0, 1e-12) << a << " " << x;
      EXPECT_NEAR(got / oracle::bessel_k_trapezoid(a, x), 1.0, 1e-12) << a << " " << x;
    }
}

TEST(MacdonaldK, OracleMatchesSeriesPath) {
  EXPECT_NEAR(macdonald_k_oracle(0.3, 0.5) / macdonald_k(0.3, 0.5), 1.0, 1e-8);
}

TEST(MacdonaldK, ScaledAndLogForms) {
  for (double x : {0.01, 3.0, 600.0}) {
    EXPECT_NEAR(log_macdonald_k(1.5, x), std::log(oracle::bessel_k_trapezoid(1.5, x)), 1e-11 * std::max(1.0, x));
    EXPECT_NEAR(macdonald_k_scaled(1.5, x) / (std::exp(x) * oracle::bessel_k(1.5, x)), 1.0, 1e-11);
  }
  // exp(x) K_{1/2}(x) = sqrt(pi / 2x) for any x.
  EXPECT_NEAR(macdonald_k_scaled(0.5, 5e3), std::sqrt(std::numbers::pi / 1e4), 1e-14);
  EXPECT_NEAR(log_macdonald_k(0.5, 5e3), 0.5 * std::log(std::numbers::pi / 1e4) - 5e3, 1e-9);
  EXPECT_TRUE(std::isfinite(log_macdonald_k(0.0, 1e4)));
}

TEST(MacdonaldK, MonotoneDecreasing) {
  for (double a : {0.0, 0.5, 2.0}) {
    double prev = macdonald_k(a, 1e-3);
    for (double x = 2e-3; x < 40.0; x *= 1.3) {
      const double v = macdonald_k(a, x);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(MacdonaldK, DomainErrors) {
  EXPECT_THROW(macdonald_k(0.5, 0.0), DomainError);
  EXPECT_THROW(macdonald_k(0.5, -1.0), DomainError);
}

TEST(MacdonaldK, Asymptotic) {
  const auto half = macdonald_k_asymptotic(0.5, 5.0, 0);
  EXPECT_NEAR(half.value, std::sqrt(std::numbers::pi / 10.0) * std::exp(-5.0), 1e-17);
  const auto a = macdonald_k_asymptotic(1.5, 20.0);
  EXPECT_LE(std::abs(a.value - macdonald_k_oracle(1.5, 20.0)), a.error_bound + 1e-22);
  EXPECT_NEAR(macdonald_k(2.0, 10.0) / macdonald_k_asymptotic(2.0, 10.0).value, 1.0, 0.01);
  const double x = 400.0;
  EXPECT_NEAR(macdonald_k(0.0, x) / (std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x)), 1.0,
              1e-3);
}

TEST(Beta, MatchesGamma) {
  EXPECT_NEAR(beta_fn(0.5, 1.0), 2.0, 1e-14);
  EXPECT_NEAR(beta_fn(2.5, 1.5), std::tgamma(2.5) * std::tgamma(1.5) / std::tgamma(4.0), 1e-14);
}
