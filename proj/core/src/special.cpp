#include "musb/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "musb/errors.hpp"
#include "musb/quadrature.hpp"

namespace musb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Above this modulus e_mu_parts switches from the power series to the
// Hankel expansion of I_{mu -+ 1/2}.
constexpr double kSeriesRadius = 14.0;

// Taylor coefficients of 1/Gamma(1+x) at odd orders 1, 3, ..., 13.
constexpr double kRecipGammaOdd[7] = {
    0.57721566490153286061,  -0.042002635034095235529, -0.042197734555544336748,
    0.0072189432466630995424, -0.00021524167411495097282, -0.000020134854780788238656,
    1.1330272319816958824e-6};

// (1/Gamma(1-x) - 1/Gamma(1+x)) / (2x)
double temme_gam1(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    double s = 0.0, p = 1.0;
    for (double c : kRecipGammaOdd) {
      s += c * p;
      p *= x2;
    }
    return -s;
  }
  return (1.0 / std::tgamma(1.0 - x) - 1.0 / std::tgamma(1.0 + x)) / (2.0 * x);
}

// K_xmu(x) and K_{xmu+1}(x) for |xmu| <= 1/2, multiplied by exp(x).
void bessel_k_pair_scaled(double xmu, double x, double& k0, double& k1) {
  const double xmu2 = xmu * xmu;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * xmu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = xmu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const double gampl = 1.0 / std::tgamma(1.0 + xmu);
    const double gammi = 1.0 / std::tgamma(1.0 - xmu);
    const double gam1 = temme_gam1(xmu);
    const double gam2 = 0.5 * (gammi + gampl);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 500; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      c *= d / i;
      p /= (i - xmu);
      q /= (i + xmu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double ex = std::exp(x);
    k0 = sum * ex;
    k1 = sum1 * (2.0 / x) * ex;
    return;
  }
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - xmu2;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  k0 = std::sqrt(kPi / (2.0 * x)) / s;
  k1 = k0 * (xmu + x + 0.5 - h) / x;
}

double check_positive_x(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be positive");
  return x;
}

struct SeriesParts {
  cplx even, odd;
};

SeriesParts series_parts(double mu, cplx z, double tol) {
  cplx term = 1.0;
  SeriesParts s{1.0, 0.0};
  double absum = 1.0;
  const double az = std::abs(z);
  for (unsigned n = 1; n < 200000; ++n) {
    term *= z / (n + 2.0 * mu * theta_odd(n));
    if (n & 1u)
      s.odd += term;
    else
      s.even += term;
    const double at = std::abs(term);
    absum += at;
    const double r = az / (n + 1.0);
    if (r < 1.0 && at * r / (1.0 - r) <= tol * absum) break;
  }
  if (!std::isfinite(absum)) throw OverflowError("e_mu series overflow");
  return s;
}

// exp(z) 1F1(mu; 2mu+1; -2z), the Kummer form of e_mu. Its terms share one
// sign for real z < 0, unlike the power series.
cplx kummer_series(double mu, cplx z, double tol) {
  const cplx x = -2.0 * z;
  const double ax = std::abs(x);
  cplx term = 1.0, sum = 1.0;
  double absum = 1.0;
  for (unsigned n = 0; n < 200000; ++n) {
    term *= (mu + n) / (2.0 * mu + 1.0 + n) * x / (n + 1.0);
    sum += term;
    const double at = std::abs(term);
    absum += at;
    const double r = ax / (n + 2.0);
    if (r < 1.0 && at * r / (1.0 - r) <= tol * absum) break;
  }
  if (!std::isfinite(absum)) throw OverflowError("e_mu series overflow");
  return std::exp(z) * sum;
}

// Hankel expansion sums  sum (-1)^k a_k(nu) / w^k  and  sum a_k(nu) / w^k.
void hankel_sums(double nu, cplx w, cplx& s1, cplx& s2) {
  const double fn = 4.0 * nu * nu;
  const cplx inv = 1.0 / w;
  double a = 1.0;
  cplx pw = 1.0;
  s1 = 1.0;
  s2 = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (fn - odd * odd) / (8.0 * k);
    pw *= inv;
    const cplx t = a * pw;
    const double mag = std::abs(t);
    if (mag == 0.0) break;
    if (odd * odd > fn && mag > last) break;
    s2 += t;
    s1 += (k & 1) ? -t : t;
    last = mag;
    if (mag < 1e-17 * std::abs(s2)) break;
  }
}

ScaledParts hankel_parts(double mu, cplx w) {
  const bool flip = w.real() < 0.0;
  if (flip) w = -w;
  const bool cj = w.imag() < 0.0;
  if (cj) w = std::conj(w);

  cplx s1e, s2e, s1o, s2o;
  hankel_sums(mu - 0.5, w, s1e, s2e);
  hankel_sums(mu + 0.5, w, s1o, s2o);

  const cplx i1(0.0, 1.0);
  const cplx ph1 = std::exp(i1 * w.imag());
  const cplx ph2 = std::exp(-2.0 * w.real() - i1 * w.imag());
  const cplx stokes = std::exp(i1 * (kPi * mu));
  const cplx pref = std::tgamma(mu + 0.5) * std::pow(0.5 * w, 0.5 - mu) / std::sqrt(2.0 * kPi * w);

  ScaledParts out;
  out.even = pref * (ph1 * s1e + stokes * ph2 * s2e);
  out.odd = pref * (ph1 * s1o - stokes * ph2 * s2o);
  out.log_scale = w.real();
  if (cj) {
    out.even = std::conj(out.even);
    out.odd = std::conj(out.odd);
  }
  if (flip) out.odd = -out.odd;
  return out;
}

}  // namespace

DeformParams::DeformParams(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
  if (!(mu_ >= 0.0) || !std::isfinite(mu_)) throw DomainError("DeformParams: mu must be >= 0");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
    throw DomainError("DeformParams: lambda must be > 0");
}

double gamma_mu(const DeformParams& params, unsigned n) {
  double g = 1.0;
  for (unsigned k = 1; k <= n; ++k) g *= k + 2.0 * params.mu * theta_odd(k);
  if (!std::isfinite(g))
    throw OverflowError("gamma_mu(" + std::to_string(n) + ") exceeds the floating range");
  return g;
}

double gamma_mu_ratio(const DeformParams& params, unsigned n, unsigned k) {
  if (k > n) throw DomainError("gamma_mu_ratio: k > n");
  double g = 1.0;
  for (unsigned m = k + 1; m <= n; ++m) g *= m + 2.0 * params.mu * theta_odd(m);
  if (!std::isfinite(g)) throw OverflowError("gamma_mu_ratio overflow");
  return g;
}

cplx e_mu_series(const DeformParams& params, cplx z, double tol) {
  if (!(tol > 0.0)) throw DomainError("e_mu_series: tol must be positive");
  if (z.real() < 0.0) return kummer_series(params.mu, z, tol);
  const SeriesParts s = series_parts(params.mu, z, tol);
  return s.even + s.odd;
}

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double sigma_density(const DeformParams& params, double t) {
  const double mu = params.mu;
  if (!(mu > 0.0)) throw DomainError("sigma_mu requires mu > 0");
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::pow(1.0 - t, mu - 1.0) * std::pow(1.0 + t, mu) / beta_fn(0.5, mu);
}

cplx e_mu_integral(const DeformParams& params, cplx z, double tol) {
  const double mu = params.mu;
  if (!(mu > 0.0)) throw DomainError("e_mu_integral requires mu > 0");
  const double norm = beta_fn(0.5, mu);
  AdaptiveOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-3 * std::exp(std::abs(z.real()));
  opt.max_depth = 60;
  QuadResult<cplx> r;
  if (mu < 1.0) {
    // t = 1 - u^(1/mu) absorbs (1-t)^(mu-1) dt into du / mu.
    const double inv = 1.0 / mu;
    auto f = [&](double u) -> cplx {
      const double t = 1.0 - std::pow(u, inv);
      const double onep = std::max(0.0, 1.0 + t);
      return std::exp(t * z) * std::pow(onep, mu);
    };
    r = gauss_kronrod(std::function<cplx(double)>(f), 0.0, std::pow(2.0, mu), opt);
    r.value *= inv;
    r.error *= inv;
  } else {
    auto f = [&](double t) -> cplx {
      return std::exp(t * z) * std::pow(1.0 - t, mu - 1.0) * std::pow(1.0 + t, mu);
    };
    r = gauss_kronrod(std::function<cplx(double)>(f), -1.0, 1.0, opt);
  }
  if (!r.converged) throw ToleranceNotMet("e_mu_integral: refinement stalled", r.error / norm);
  return r.value / norm;
}

ScaledParts e_mu_parts(const DeformParams& params, cplx w) {
  const double mu = params.mu;
  if (mu == 0.0) {
    const double s = std::abs(w.real());
    const cplx ep = std::exp(w - s);
    const cplx em = std::exp(-w - s);
    return {0.5 * (ep + em), 0.5 * (ep - em), s};
  }
  if (std::abs(w) <= kSeriesRadius) {
    const SeriesParts s = series_parts(mu, w, 1e-16);
    return {s.even, s.odd, 0.0};
  }
  return hankel_parts(mu, w);
}

cplx e_mu(const DeformParams& params, cplx w) {
  if (std::abs(w) <= kSeriesRadius) return e_mu_series(params, w);
  const ScaledParts p = e_mu_parts(params, w);
  return (p.even + p.odd) * std::exp(p.log_scale);
}

ComplexPoly hermite_mu(const DeformParams& params, unsigned n) {
  std::vector<cplx> c(n + 1, cplx{});
  double nfact = std::tgamma(n + 1.0);
  for (unsigned j = 0; 2 * j <= n; ++j) {
    const unsigned k = n - 2 * j;
    const double sign = (j & 1u) ? -1.0 : 1.0;
    c[k] = sign * nfact * std::ldexp(1.0, static_cast<int>(k)) /
           (std::tgamma(j + 1.0) * gamma_mu(params, k));
  }
  return ComplexPoly(std::move(c));
}

double macdonald_k_scaled(double alpha, double x) {
  check_positive_x(x, "macdonald_k");
  const double nu = std::abs(alpha);
  const int nl = static_cast<int>(std::floor(nu + 0.5));
  const double xmu = nu - nl;
  double k0, k1;
  bessel_k_pair_scaled(xmu, x, k0, k1);
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double t = (xmu + i) * xi2 * k1 + k0;
    k0 = k1;
    k1 = t;
  }
  return k0;
}

double macdonald_k(double alpha, double x) {
  const double s = macdonald_k_scaled(alpha, x);
  return s * std::exp(-x);
}

double log_macdonald_k(double alpha, double x) { return std::log(macdonald_k_scaled(alpha, x)) - x; }

double macdonald_k_oracle(double alpha, double x, double tol) {
  check_positive_x(x, "macdonald_k_oracle");
  const double a = std::abs(alpha);
  // Exponent -x cosh u + a u peaks at sinh u = a / x.
  const double ustar = std::asinh(a / x);
  const double peak = -x * std::cosh(ustar) + a * ustar;
  double U = ustar + 1.0;
  const double cut = peak + std::log(tol) - 20.0;
  while (-x * std::cosh(U) + a * U > cut) U += 0.5;
  auto f = [&](double u) {
    const double ch = x * std::cosh(u);
    return 0.5 * (std::exp(-ch + a * u - peak) + std::exp(-ch - a * u - peak));
  };
  AdaptiveOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-6;
  opt.max_depth = 60;
  std::vector<double> edges{0.0};
  if (ustar > 0.5) edges.push_back(ustar);
  edges.push_back(U);
  KahanSum s;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto r = gauss_kronrod(std::function<double(double)>(f), edges[i], edges[i + 1], opt);
    if (!r.converged) throw ToleranceNotMet("macdonald_k_oracle: refinement stalled", r.error);
    s.add(r.value);
  }
  return s.value() * std::exp(peak);
}

AsymptoticValue macdonald_k_asymptotic(double alpha, double x, int n_terms) {
  if (!(x > 0.0)) throw DomainError("macdonald_k_asymptotic: x must be positive");
  if (!(alpha > -0.5)) throw DomainError("macdonald_k_asymptotic: requires alpha > -1/2");
  const int n_min = std::max(0, static_cast<int>(std::ceil(alpha - 0.5)) - 1);
  if (n_terms < 0) n_terms = std::max(0, static_cast<int>(std::ceil(alpha - 0.5)));
  if (n_terms < n_min)
    throw DomainError("macdonald_k_asymptotic: remainder bound needs n_terms + 1 >= alpha - 1/2");
  const double fn = 4.0 * alpha * alpha;
  const double lead = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= n_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (fn - odd * odd) / (8.0 * k * x);
    sum += term;
  }
  const int k = n_terms + 1;
  const double odd = 2.0 * k - 1.0;
  const double next = term * (fn - odd * odd) / (8.0 * k * x);
  return {lead * sum, lead * std::abs(next), n_terms};
}

}  // namespace musb
