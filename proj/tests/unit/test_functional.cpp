#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <json.hpp>
#include <numbers>
#include <random>

#include "musb/errors.hpp"
#include "musb/functional.hpp"
#include "musb/transform.hpp"
#include "oracles.hpp"

using namespace musb;

namespace {

const QuadratureSpec kSpec;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(Report, JsonFieldsInOrder) {
  const auto r = CheckReport::make("demo", {{"mu", 0.5}, {"p", kInf}}, 1.0, 2.0, 1e-9);
  EXPECT_TRUE(r.passed);
  EXPECT_DOUBLE_EQ(r.margin, 1.0);
  const std::string js = r.to_json();
  EXPECT_LT(js.find("\"name\""), js.find("\"params\""));
  EXPECT_LT(js.find("\"params\""), js.find("\"lhs\""));
  EXPECT_LT(js.find("\"quad_err\""), js.find("\"passed\""));
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["params"]["p"], "inf");
  EXPECT_EQ(j["passed"], true);
  EXPECT_FALSE(CheckReport::make("x", {}, 2.0, 1.0, 0.5).passed);
}

TEST(Indices, Conjugate) {
  EXPECT_EQ(conjugate_index(1.0), kInf);
  EXPECT_EQ(conjugate_index(kInf), 1.0);
  EXPECT_DOUBLE_EQ(conjugate_index(4.0), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(conjugate_index(2.0), 2.0);
}

TEST(LpNorm, LineExamples) {
  for (double p : {1.0, 2.0, 3.5})
    EXPECT_NEAR(lp_norm_line({0.7}, ComplexPoly{1.0}, p, kSpec), 1.0, 1e-10);
  EXPECT_NEAR(lp_norm_line({0.0}, ComplexPoly::monomial(1), 2.0, kSpec), std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(lp_norm_line({1.0}, ComplexPoly::monomial(1), 2.0, kSpec), std::sqrt(1.5), 1e-10);
  EXPECT_NEAR(lp_norm_line({0.0}, ComplexPoly{3.0}, kInf, kSpec), 3.0, 1e-15);
  EXPECT_THROW(lp_norm_line({0.0}, ComplexPoly::monomial(1), kInf, kSpec), DomainError);
  EXPECT_THROW(lp_norm_line({0.0}, ComplexPoly{1.0}, 0.5, kSpec), DomainError);
}

TEST(LpNorm, LineAgainstMoments) {
  // ||t^k||_p^p = int |t|^{kp} dg_mu.
  for (double mu : {0.0, 0.5, 2.0})
    for (double p : {1.0, 3.0, 4.5}) {
      const double ref = std::pow(oracle::line_abs_moment(mu, 3 * p), 1.0 / p);
      EXPECT_NEAR(lp_norm_line({mu}, ComplexPoly::monomial(3), p, kSpec) / ref, 1.0, 1e-9);
    }
}

TEST(LpNorm, HolderMonotone) {
  const ComplexPoly f{1.0, cplx(0, -2), 0.0, 0.5};
  const DeformParams p(0.5);
  double prev = 0.0;
  for (double pw : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
    const double v = lp_norm_line(p, f, pw, kSpec);
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
}

TEST(LpNorm, PlaneExamples) {
  const DeformParams p(1.0, 1.0);
  EXPECT_NEAR(lp_norm_plane(p, parity_split(ComplexPoly{1.0}), 2.0, kSpec), 1.0, 1e-9);
  EXPECT_NEAR(lp_norm_plane(p, parity_split(xi_poly(p, 1)), 2.0, kSpec), 1.0, 1e-9);
  const DeformParams pl(1.0, 2.5);
  EXPECT_NEAR(lp_norm_plane(pl, parity_split(chi_poly(pl, 1)), 2.0, kSpec), 1.0, 1e-9);
  // Odd part alone sees the odd mass.
  const ParityPair odd_const{ComplexPoly{}, ComplexPoly{1.0}};
  EXPECT_NEAR(lp_norm_plane(p, odd_const, 3.0, kSpec), std::cbrt(2.0), 1e-9);
}

TEST(Entropy, LineExamples) {
  EXPECT_NEAR(entropy_line({0.5}, ComplexPoly{1.0}, kSpec).value, 0.0, 1e-10);
  const double s1 = entropy_line({0.0}, ComplexPoly::monomial(1), kSpec).value;
  const double s2 = entropy_line({0.0}, ComplexPoly{0.0, 2.0}, kSpec).value;
  EXPECT_NEAR(s2 / s1, 4.0, 1e-9);
}

TEST(Entropy, LineAgainstBruteForce) {
  for (double mu : {0.0, 1.0})
    for (const auto& f : {ComplexPoly::monomial(1), ComplexPoly{1.0, 0.0, 0.0, 1.0}}) {
      const double a = oracle::line_integral(mu, [&](double t) {
        const double m = std::norm(f(t));
        return m > 0 ? m * std::log(m) : 0.0;
      });
      const double n2 = oracle::line_norm2(mu, f.coeffs());
      const auto e = entropy_line({mu}, f, kSpec);
      const double ref = a - n2 * std::log(n2);
      EXPECT_NEAR(e.value, ref, 5e-9 * std::max(1.0, std::abs(ref)));
      EXPECT_NEAR(e.norm2, n2, 1e-9);
    }
}

TEST(Entropy, LowerBound) {
  for (double mu : {0.0, 0.5, 1.0}) {
    const DeformParams p(mu, 1.5);
    const double W = total_mass_plane(p);
    EXPECT_NEAR(W, 1.0 + oracle::odd_mass(mu), 1e-9);
    for (const auto& f : {ComplexPoly{1.0}, ComplexPoly{1.0, 1.0}, ComplexPoly{0.0, cplx(0, 1), 0.0, 1.0}}) {
      const auto e = entropy_plane(p, parity_split(f), kSpec);
      EXPECT_GE(e.value, -std::log(W) * e.norm2 - 1e-8);
      const auto el = entropy_line(p, f, kSpec);
      EXPECT_GE(el.value, -1e-8);
    }
  }
  EXPECT_NEAR(total_mass_line({2.0}), 1.0, 1e-10);
}

TEST(Interp, Scale) {
  for (double th : {1.0, 1.5, 4.0}) {
    EXPECT_DOUBLE_EQ(interp_scale(th, 0.0), 2.0);
    EXPECT_NEAR(interp_scale(th, 1.0), th, 1e-15);
  }
  for (double s : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(interp_scale(2.0, s), 2.0);
  EXPECT_THROW(interp_scale(3.0, 1.5), DomainError);
}

TEST(EntropyDerivative, TrivialCases) {
  const auto c = entropy_derivative_check({0.5}, ComplexPoly{1.0}, 3.0, Space::line, kSpec);
  EXPECT_TRUE(c.passed);
  EXPECT_NEAR(c.rhs, 0.0, 1e-9);
  EXPECT_NEAR(c.lhs, 0.0, 1e-6);
  const auto d = entropy_derivative_check({0.5}, ComplexPoly{0.0, 1.0, 1.0}, 2.0, Space::line, kSpec);
  EXPECT_NEAR(d.lhs, 0.0, 1e-9);
  EXPECT_TRUE(d.passed);
}

TEST(EntropyDerivative, AgainstEntropyFormula) {
  const ComplexPoly t = ComplexPoly::monomial(1);
  const auto c = entropy_derivative_check({0.0}, t, 4.0, Space::line, kSpec);
  const auto ent = entropy_line({0.0}, t, kSpec);
  EXPECT_NEAR(c.rhs, 0.25 * ent.value / std::sqrt(ent.norm2), 1e-9);
  EXPECT_TRUE(c.passed);
  EXPECT_TRUE(entropy_derivative_check({0.0}, t, 4.0, Space::plane, kSpec).passed);
}

TEST(HilleTamarkin, FiniteInsideRegion) {
  const auto r = hille_tamarkin_norm({0.0, 1.0}, 4.0, 1.0, kSpec);
  EXPECT_GT(r.value, 1.0);
  EXPECT_LT(r.error, 1e-4);
  EXPECT_NEAR(r.value, r.even + r.odd, 1e-14);
}

TEST(HilleTamarkin, P2MatchesRadialOracle) {
  for (double mu : {0.0, 1.0}) {
    const auto r = hille_tamarkin_norm({mu, 2.0}, 2.0, 2.0, kSpec);
    EXPECT_NEAR(r.even / oracle::ht_p2(mu, 2.0, 2.0, true), 1.0, 1e-5) << mu;
    EXPECT_NEAR(r.odd / oracle::ht_p2(mu, 2.0, 2.0, false), 1.0, 1e-5) << mu;
  }
}

TEST(HilleTamarkin, DivergentOutsideRegion) {
  EXPECT_TRUE(ht_diverges(1.0, 2.0, 2.0));
  EXPECT_TRUE(ht_diverges(1.0, 4.0, 2.5));
  EXPECT_FALSE(ht_diverges(1.0, 4.0, 1.0));
  EXPECT_FALSE(ht_diverges(2.0, 2.0, 2.0));
  EXPECT_THROW(hille_tamarkin_norm({0.0, 1.0}, 2.0, 2.0, kSpec), NonConvergent);
  EXPECT_THROW(hille_tamarkin_norm({0.5, 1.5}, 3.0, 3.5, kSpec), NonConvergent);
  EXPECT_THROW(hille_tamarkin_norm({1.0, 1.0}, 4.0, 2.5, kSpec), NonConvergent);
  EXPECT_THROW(hille_tamarkin_norm({0.0, 1.0}, 1.0, 1.0, kSpec), DomainError);
}

TEST(Kappa, TrivialValues) {
  const DeformParams p(0.8, 2.0);
  const cplx z(0.4, 0.9);
  EXPECT_DOUBLE_EQ(kappa(p, 1.5, 0.0, z, Parity::even), 1.0);
  EXPECT_NEAR(kappa({0.8, 1.0}, 1.5, 0.7, z, Parity::odd), 1.0, 1e-14);
  const double lim = std::pow(2.0, 0.5 / 1.5);
  EXPECT_NEAR(kappa(p, 1.5, 0.5, 1e-7, Parity::odd) / lim, 1.0, 1e-6);
  EXPECT_NEAR(kappa(p, 1.5, 0.5, 0.0, Parity::odd) / lim, 1.0, 1e-12);
  EXPECT_THROW(kappa(p, 4.0, 0.5, z, Parity::even), DomainError);
  EXPECT_THROW(kappa({0.8, 0.9}, 1.0, 0.5, z, Parity::even), DomainError);
}

TEST(Kappa, BoundedOnLogRadialGrid) {
  auto sup = [](const DeformParams& p, int n) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double r = 1e-3 * std::pow(8.0 / 1e-3, static_cast<double>(i) / n);
      for (int a = 0; a < 64; ++a)
        for (Parity par : {Parity::even, Parity::odd})
          m = std::max(m, kappa(p, 1.0, 1.0, std::polar(r, 2 * oracle::pi * a / 64), par));
    }
    return m;
  };
  for (double mu : {0.0, 0.4, 0.5, 0.6, 2.0})
    for (double lambda : {1.0, 1.5, 3.0}) {
      const DeformParams p(mu, lambda);
      const double a = sup(p, 100), b = sup(p, 200);
      EXPECT_TRUE(std::isfinite(a));
      EXPECT_LT(std::abs(a - b) / b, 0.01) << mu << " " << lambda;
    }
}

TEST(NuS, Endpoints) {
  const DeformParams p(0.6, 1.8);
  const double q = 1.5;
  for (double r : {0.2, 1.0, 2.5})
    for (Parity par : {Parity::even, Parity::odd}) {
      const cplx z = std::polar(r, 1.1);
      EXPECT_NEAR(nu_s_density(p, q, 0.0, z, par) / nu_density(p.with_lambda(1.0), z, par), 1.0, 1e-12);
      EXPECT_NEAR(nu_s_density(p, q, 1.0, z, par) / nu_density(p, z, par), 1.0, 1e-10);
      EXPECT_NEAR(nu_s_density(p.with_lambda(1.0), q, 0.4, z, par) / nu_density(p.with_lambda(1.0), z, par),
                  1.0, 1e-12);
    }
}
