#pragma once

#include <functional>
#include <vector>

#include "musb/measure.hpp"
#include "musb/poly.hpp"
#include "musb/special.hpp"

namespace musb {

enum class BasisTag { zeta, xi, chi };

// Coefficients against zeta_n (L^2(R, dg_mu)), xi_n (Fock space at lambda=1)
// or chi_n (Fock space at params.lambda).
struct FockCoeffs {
  BasisTag tag = BasisTag::xi;
  std::vector<cplx> coeffs;
  DeformParams params;

  double norm2() const;
};

enum class KernelPart { full, even, odd };

// exp(-z^2/2) e_mu(sqrt(2) t z), or its even/odd part in z.
cplx kernel_B(const DeformParams& params, cplx z, double t, KernelPart part = KernelPart::full);

// B_mu f evaluated at z by quadrature against dg_mu.
QuadResult<cplx> apply_B_quadrature(const DeformParams& params, const ComplexPoly& f, cplx z,
                                    const QuadratureSpec& spec);

// Closed-form image of a polynomial.
ComplexPoly apply_B_poly(const DeformParams& params, const ComplexPoly& f);

// (gamma_mu(n)/n!) (-i/2)^n H_n^mu(i z / sqrt 2) as a polynomial in z, built
// by composing hermite_mu with the argument map.
ComplexPoly monomial_image_from_hermite(const DeformParams& params, unsigned n);

ComplexPoly zeta_poly(const DeformParams& params, unsigned n);
ComplexPoly xi_poly(const DeformParams& params, unsigned n);
ComplexPoly chi_poly(const DeformParams& params, unsigned n);

// Polynomial <-> coefficient conversions (zeta: triangular solve in t).
FockCoeffs to_fock(const DeformParams& params, const ComplexPoly& f, BasisTag tag);
ComplexPoly from_fock(const FockCoeffs& c);

// phi_0^mu(t) = Gamma(mu+1/2)^(-1/2) exp(-t^2/2).
double ground_state_phi0(const DeformParams& params, double t);

enum class GsDirection { to_gs, from_gs };

// to_gs: f / phi_0, from_gs: f * phi_0.
std::function<cplx(double)> ground_state_map(const DeformParams& params,
                                              std::function<cplx(double)> f,
                                              GsDirection direction);

// f(lambda^(1/2) z).
ComplexPoly dilation_T(double lambda, const ComplexPoly& f);

// f'(t) + (mu/t)(f(t) - f(-t)).
ComplexPoly dunkl_D(const DeformParams& params, const ComplexPoly& f);

enum class Ladder { create, annihilate, number };

FockCoeffs ladder_ops(const FockCoeffs& c, Ladder which);

// sum (n + 2 mu theta(n)) |a_n|^2.
double dirichlet_energy(const FockCoeffs& c);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Squared norm in L^2(C x Z_2, nu_mu) (lambda = 1).
Estimate fock_norm2(const DeformParams& params, const ParityPair& f, const QuadratureSpec& spec);

// integral |f_e|^2 |z|^2 d nu_e + integral |f_o|^2 |z|^2 d nu_o  (lambda = 1).
Estimate energy_E_mu(const DeformParams& params, const ParityPair& f, const QuadratureSpec& spec);

// integral |f_par|^2 log(K(|z|^2) / K(lambda |z|^2)) d nu_par at lambda = 1,
// K of order mu -+ 1/2; params.lambda is the dilation parameter.
Estimate dilation_energy(const DeformParams& params, const ParityPair& f,
                         const QuadratureSpec& spec);

// dilation_energy - log(sqrt lambda) ||f||^2 - (lambda - 1) E_mu(f).
Estimate rho_remainder(const DeformParams& params, const ParityPair& f,
                       const QuadratureSpec& spec);

struct RatioRange {
  double min = 0.0;
  double max = 0.0;
};

// Observed range of rho / ||f||^2 over a family of test functions.
RatioRange rho_ratio_range(const DeformParams& params, const std::vector<ParityPair>& family,
                           const QuadratureSpec& spec);

}  // namespace musb
