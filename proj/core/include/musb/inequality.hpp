#pragma once

#include <optional>
#include <string>
#include <vector>

#include "musb/functional.hpp"
#include "musb/transform.hpp"

namespace musb {

struct RegionQuery {
  double p_inv = 0.0;
  double q_inv = 1.0;
  double lambda = 1.0;
};

bool region_holds(const RegionQuery& rq);

// Smallest lambda above which region_holds is true.
double lambda_threshold(double p_inv, double q_inv);

struct RegionRow {
  double p_inv = 0.0;
  double q_inv_boundary = 0.0;
  double q_inv_cut = 0.0;
};

// p_inv sampled uniformly on [0, 2 lambda / (2 lambda + 1)].
std::vector<RegionRow> region_boundary(double lambda, int n_samples);
std::string region_boundary_csv(double lambda, int n_samples);

// Equality checks (masses, eq_3_3, lemma_2_1 at mu = 0 aside) report
// margin = -|rhs - lhs| so that passed keeps meaning margin >= -quad_err.

// |e_mu(z)|^q <= e_mu(q Re z).
CheckReport check_lemma_2_1(const DeformParams& params, cplx z, double q);

// int e_mu(sqrt2 p' x t) exp(-t^2) |t|^(2 mu) dt = Gamma(mu + 1/2) exp(p'^2 x^2 / 2).
CheckReport check_eq_3_3(const DeformParams& params, double pprime, double x,
                         const QuadratureSpec& spec);

// Quadrature mass of one parity sheet against the closed form.
CheckReport check_parity_mass(const DeformParams& params, Parity parity,
                              const QuadratureSpec& spec);

// ||B f||_{q_s} <= A^s ||f||_{p_s} at lambda = 1.
CheckReport check_hausdorff_young(const DeformParams& params, double p, double q, double s,
                                  const ComplexPoly& f, const QuadratureSpec& spec,
                                  const std::optional<HTResult>& A = std::nullopt);

CheckReport check_hirschman(const DeformParams& params, double p, double q, const ComplexPoly& f,
                            const QuadratureSpec& spec,
                            const std::optional<HTResult>& A = std::nullopt);

// ||B f||_{L^{q_s}(nu^s)} <= A_1^s ||f||_{p_s} with A_1 the norm bound at params.lambda.
CheckReport check_weighted_hy(const DeformParams& params, double p, double q, double s,
                              const ComplexPoly& f, const QuadratureSpec& spec,
                              const std::optional<HTResult>& A = std::nullopt);

CheckReport check_log_sobolev(const DeformParams& params, double p, double q,
                              const ComplexPoly& f, const QuadratureSpec& spec,
                              const std::optional<HTResult>& A = std::nullopt);

// {1, t, t^2, t + i t^3, zeta_3}.
std::vector<ComplexPoly> default_family(const DeformParams& params);

// lhs = sum lambda^-n |a_n|^2, rhs = 1, margin = sum (1 - lambda^-n) |a_n|^2.
CheckReport check_unitarity_lambda(const DeformParams& params, const FockCoeffs& c);

}  // namespace musb
