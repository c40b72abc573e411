#include "musb/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "musb/errors.hpp"

namespace musb {
namespace {

const double kSqrt2 = std::numbers::sqrt2;

double basis_scale(const DeformParams& params, BasisTag tag, unsigned n) {
  // Monomial coefficient of xi_n or chi_n.
  const double g = std::sqrt(gamma_mu(params, n));
  if (tag == BasisTag::chi) return std::pow(params.lambda, 0.5 * n) / g;
  return 1.0 / g;
}

void require_ladder_basis(const FockCoeffs& c) {
  if (c.tag == BasisTag::chi) throw DomainError("ladder operators act on zeta or xi coefficients");
}

Estimate plane_estimate(const PlaneIntegrand& f, const DeformParams& params,
                        const QuadratureSpec& spec) {
  const auto r = integrate_plane(f, params, spec);
  return {r.value, r.error};
}

const ComplexPoly& part_of(const ParityPair& f, Parity p) {
  return p == Parity::even ? f.even : f.odd;
}

}  // namespace

double FockCoeffs::norm2() const {
  double s = 0.0;
  for (const auto& a : coeffs) s += std::norm(a);
  return s;
}

cplx kernel_B(const DeformParams& params, cplx z, double t, KernelPart part) {
  const ScaledParts p = e_mu_parts(params, kSqrt2 * t * z);
  const cplx factor = std::exp(-0.5 * z * z + p.log_scale);
  switch (part) {
    case KernelPart::even:
      return factor * p.even;
    case KernelPart::odd:
      return factor * p.odd;
    case KernelPart::full:
      break;
  }
  return factor * (p.even + p.odd);
}

QuadResult<cplx> apply_B_quadrature(const DeformParams& params, const ComplexPoly& f, cplx z,
                                    const QuadratureSpec& spec) {
  std::function<cplx(double)> g = [&](double t) { return kernel_B(params, z, t) * f(t); };
  return integrate_line(g, LineWeight::ground_state, params, spec);
}

ComplexPoly apply_B_poly(const DeformParams& params, const ComplexPoly& f) {
  if (f.is_zero()) return {};
  std::vector<cplx> out(f.size(), cplx{});
  for (unsigned n = 0; n < f.size(); ++n) {
    const cplx c = f.coeff(n);
    if (c == cplx{}) continue;
    double jfact = 1.0;
    for (unsigned j = 0; 2 * j <= n; ++j) {
      if (j > 0) jfact *= j;
      const unsigned k = n - 2 * j;
      const double w = gamma_mu_ratio(params, n, k) * std::pow(2.0, 0.5 * k - n) / jfact;
      out[k] += c * w;
    }
  }
  return ComplexPoly(std::move(out));
}

ComplexPoly monomial_image_from_hermite(const DeformParams& params, unsigned n) {
  const ComplexPoly h = hermite_mu(params, n).scaled_argument(cplx(0.0, 1.0 / kSqrt2));
  const cplx pref = gamma_mu(params, n) / std::tgamma(n + 1.0) * std::pow(cplx(0.0, -0.5), static_cast<int>(n));
  return h * pref;
}

ComplexPoly zeta_poly(const DeformParams& params, unsigned n) {
  std::vector<cplx> c(n + 1, cplx{});
  const double gn = std::sqrt(gamma_mu(params, n));
  double jfact = 1.0;
  for (unsigned j = 0; 2 * j <= n; ++j) {
    if (j > 0) jfact *= j;
    const unsigned k = n - 2 * j;
    const double sign = (j & 1u) ? -1.0 : 1.0;
    c[k] = sign * std::pow(2.0, k - 0.5 * n) * gn / (jfact * gamma_mu(params, k));
  }
  return ComplexPoly(std::move(c));
}

ComplexPoly xi_poly(const DeformParams& params, unsigned n) {
  return ComplexPoly::monomial(n, basis_scale(params, BasisTag::xi, n));
}

ComplexPoly chi_poly(const DeformParams& params, unsigned n) {
  return ComplexPoly::monomial(n, basis_scale(params, BasisTag::chi, n));
}

FockCoeffs to_fock(const DeformParams& params, const ComplexPoly& f, BasisTag tag) {
  FockCoeffs c{tag, std::vector<cplx>(f.size(), cplx{}), params};
  if (tag != BasisTag::zeta) {
    for (unsigned n = 0; n < f.size(); ++n) c.coeffs[n] = f.coeff(n) / basis_scale(params, tag, n);
    return c;
  }
  ComplexPoly rest = f;
  for (int n = f.degree(); n >= 0; --n) {
    const ComplexPoly z = zeta_poly(params, static_cast<unsigned>(n));
    const cplx a = rest.coeff(n) / z.coeff(n);
    c.coeffs[n] = a;
    rest -= z * a;
    // Force the eliminated coefficient to zero against rounding.
    std::vector<cplx> rc = rest.coeffs();
    if (static_cast<int>(rc.size()) > n) rc.resize(n);
    rest = ComplexPoly(std::move(rc));
  }
  return c;
}

ComplexPoly from_fock(const FockCoeffs& c) {
  ComplexPoly out;
  for (unsigned n = 0; n < c.coeffs.size(); ++n) {
    if (c.coeffs[n] == cplx{}) continue;
    switch (c.tag) {
      case BasisTag::zeta:
        out += zeta_poly(c.params, n) * c.coeffs[n];
        break;
      case BasisTag::xi:
      case BasisTag::chi:
        out += ComplexPoly::monomial(n, c.coeffs[n] * basis_scale(c.params, c.tag, n));
        break;
    }
  }
  return out;
}

double ground_state_phi0(const DeformParams& params, double t) {
  return std::exp(-0.5 * t * t - 0.5 * std::lgamma(params.mu + 0.5));
}

std::function<cplx(double)> ground_state_map(const DeformParams& params,
                                              std::function<cplx(double)> f,
                                              GsDirection direction) {
  if (direction == GsDirection::to_gs)
    return [params, f = std::move(f)](double t) { return f(t) / ground_state_phi0(params, t); };
  return [params, f = std::move(f)](double t) { return f(t) * ground_state_phi0(params, t); };
}

ComplexPoly dilation_T(double lambda, const ComplexPoly& f) {
  if (!(lambda > 0.0)) throw DomainError("dilation_T: lambda must be > 0");
  return f.scaled_argument(std::sqrt(lambda));
}

ComplexPoly dunkl_D(const DeformParams& params, const ComplexPoly& f) {
  if (f.size() <= 1) return {};
  std::vector<cplx> d(f.size() - 1);
  for (unsigned n = 1; n < f.size(); ++n)
    d[n - 1] = (n + 2.0 * params.mu * theta_odd(n)) * f.coeff(n);
  return ComplexPoly(std::move(d));
}

FockCoeffs ladder_ops(const FockCoeffs& c, Ladder which) {
  require_ladder_basis(c);
  const double mu = c.params.mu;
  FockCoeffs out{c.tag, {}, c.params};
  switch (which) {
    case Ladder::create:
      out.coeffs.assign(c.coeffs.size() + 1, cplx{});
      for (unsigned n = 0; n < c.coeffs.size(); ++n)
        out.coeffs[n + 1] = std::sqrt(n + 1.0 + 2.0 * mu * theta_odd(n + 1)) * c.coeffs[n];
      return out;
    case Ladder::annihilate:
      if (c.coeffs.size() <= 1) {
        out.coeffs.clear();
        return out;
      }
      out.coeffs.assign(c.coeffs.size() - 1, cplx{});
      for (unsigned n = 1; n < c.coeffs.size(); ++n)
        out.coeffs[n - 1] = std::sqrt(n + 2.0 * mu * theta_odd(n)) * c.coeffs[n];
      return out;
    case Ladder::number: {
      FockCoeffs r = ladder_ops(ladder_ops(c, Ladder::annihilate), Ladder::create);
      r.coeffs.resize(c.coeffs.size(), cplx{});
      r.coeffs[0] = cplx{};
      return r;
    }
  }
  return out;
}

double dirichlet_energy(const FockCoeffs& c) {
  require_ladder_basis(c);
  double s = 0.0;
  for (unsigned n = 0; n < c.coeffs.size(); ++n)
    s += (n + 2.0 * c.params.mu * theta_odd(n)) * std::norm(c.coeffs[n]);
  return s;
}

Estimate fock_norm2(const DeformParams& params, const ParityPair& f, const QuadratureSpec& spec) {
  const DeformParams p1 = params.with_lambda(1.0);
  return plane_estimate([&](cplx z, Parity p) { return std::norm(part_of(f, p)(z)); }, p1, spec);
}

Estimate energy_E_mu(const DeformParams& params, const ParityPair& f, const QuadratureSpec& spec) {
  const DeformParams p1 = params.with_lambda(1.0);
  return plane_estimate(
      [&](cplx z, Parity p) { return std::norm(part_of(f, p)(z)) * std::norm(z); }, p1, spec);
}

Estimate dilation_energy(const DeformParams& params, const ParityPair& f,
                         const QuadratureSpec& spec) {
  const double lam = params.lambda;
  if (lam < 1.0) throw DomainError("dilation_energy requires lambda >= 1");
  if (lam == 1.0) return {0.0, 0.0};
  const DeformParams p1 = params.with_lambda(1.0);
  auto integrand = [&](cplx z, Parity p) {
    const double a2 = std::norm(part_of(f, p)(z));
    if (a2 == 0.0) return 0.0;
    const double x = std::norm(z);
    const double nu = parity_order(params, p);
    const double lr = std::log(macdonald_k_scaled(nu, x) / macdonald_k_scaled(nu, lam * x)) +
                      (lam - 1.0) * x;
    return a2 * lr;
  };
  return plane_estimate(integrand, p1, spec);
}

Estimate rho_remainder(const DeformParams& params, const ParityPair& f,
                       const QuadratureSpec& spec) {
  const double lam = params.lambda;
  if (lam < 1.0) throw DomainError("rho_remainder requires lambda >= 1");
  const Estimate e = dilation_energy(params, f, spec);
  const Estimate n = fock_norm2(params, f, spec);
  const Estimate em = energy_E_mu(params, f, spec);
  const double v = e.value - 0.5 * std::log(lam) * n.value - (lam - 1.0) * em.value;
  const double err = e.error + 0.5 * std::abs(std::log(lam)) * n.error + (lam - 1.0) * em.error;
  return {v, err};
}

RatioRange rho_ratio_range(const DeformParams& params, const std::vector<ParityPair>& family,
                           const QuadratureSpec& spec) {
  RatioRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& f : family) {
    const double n = fock_norm2(params, f, spec).value;
    if (n == 0.0) continue;
    const double q = rho_remainder(params, f, spec).value / n;
    r.min = std::min(r.min, q);
    r.max = std::max(r.max, q);
  }
  return r;
}

}  // namespace musb
