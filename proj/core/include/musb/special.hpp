#pragma once

#include <complex>

#include "musb/poly.hpp"

namespace musb {

// Deformation parameter mu >= 0 and weight lambda > 0.
struct DeformParams {
  double mu = 0.0;
  double lambda = 1.0;

  DeformParams() = default;
  DeformParams(double mu_, double lambda_ = 1.0);

  DeformParams with_lambda(double l) const { return DeformParams(mu, l); }
};

inline int theta_odd(unsigned n) { return static_cast<int>(n & 1u); }

// gamma_mu(n) = (n + 2 mu theta(n)) gamma_mu(n-1), gamma_mu(0) = 1.
double gamma_mu(const DeformParams& params, unsigned n);

// gamma_mu(n) / gamma_mu(k) for k <= n, without forming either factor.
double gamma_mu_ratio(const DeformParams& params, unsigned n, unsigned k);

// Power series sum z^n / gamma_mu(n), stopped once the geometric tail bound
// drops below tol times the running sum of term magnitudes.
cplx e_mu_series(const DeformParams& params, cplx z, double tol = 1e-14);

// Quadrature of exp(tz) against the probability density sigma_mu on [-1,1].
// Requires mu > 0.
cplx e_mu_integral(const DeformParams& params, cplx z, double tol = 1e-13);

// Density of sigma_mu: (1-t)^(mu-1) (1+t)^mu / B(1/2, mu) on (-1,1).
double sigma_density(const DeformParams& params, double t);

// Even and odd parts of e_mu(w), both multiplied by exp(-log_scale).
struct ScaledParts {
  cplx even;
  cplx odd;
  double log_scale = 0.0;
};

// Series for small |w|, large-argument Bessel expansion otherwise.
ScaledParts e_mu_parts(const DeformParams& params, cplx w);

// e_mu(w) evaluated through e_mu_parts.
cplx e_mu(const DeformParams& params, cplx w);

// H_n^mu from exp(-z^2) e_mu(2tz) = sum H_n^mu(t) z^n / n!.
ComplexPoly hermite_mu(const DeformParams& params, unsigned n);

// Macdonald function K_alpha(x), x > 0.
double macdonald_k(double alpha, double x);

// exp(x) K_alpha(x).
double macdonald_k_scaled(double alpha, double x);

// log K_alpha(x) without underflow for large x.
double log_macdonald_k(double alpha, double x);

// Quadrature of int_0^inf exp(-x cosh u) cosh(alpha u) du.
double macdonald_k_oracle(double alpha, double x, double tol = 1e-12);

struct AsymptoticValue {
  double value = 0.0;
  double error_bound = 0.0;
  int n_terms = 0;
};

// Large-x expansion of K_alpha summed through order n_terms beyond the
// leading term; error_bound is the magnitude of the next term.
// n_terms < 0 selects the smallest admissible order.
AsymptoticValue macdonald_k_asymptotic(double alpha, double x, int n_terms = -1);

double beta_fn(double a, double b);

}  // namespace musb
