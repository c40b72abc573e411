#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "musb/measure.hpp"
#include "musb/poly.hpp"
#include "musb/special.hpp"

namespace musb {

struct CheckReport {
  std::string name;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double quad_err = 0.0;
  bool passed = false;

  static CheckReport make(std::string name, std::map<std::string, double> params, double lhs,
                          double rhs, double quad_err);

  // One JSON object: name, params, lhs, rhs, margin, quad_err, passed.
  std::string to_json() const;
};

// p/(p-1), with 1 -> inf and inf -> 1.
double conjugate_index(double p);

inline bool is_inf(double p) { return p == std::numeric_limits<double>::infinity(); }

// (int |f|^p dg_mu)^(1/p). p = inf is accepted for constant polynomials only.
double lp_norm_line(const DeformParams& params, const ComplexPoly& f, double p,
                    const QuadratureSpec& spec);
// Same for an arbitrary function; p must be finite.
double lp_norm_line(const DeformParams& params, const std::function<cplx(double)>& f, double p,
                    const QuadratureSpec& spec);

// (||f_e||_p^p + ||f_o||_p^p)^(1/p) against nu_{mu,lambda}.
double lp_norm_plane(const DeformParams& params, const ParityPair& f, double p,
                     const QuadratureSpec& spec);

struct EntropyValue {
  double value = 0.0;
  double error = 0.0;
  double norm2 = 0.0;
};

// int |f|^2 log |f|^2 - ||f||^2 log ||f||^2.
EntropyValue entropy_line(const DeformParams& params, const ComplexPoly& f,
                          const QuadratureSpec& spec);
EntropyValue entropy_plane(const DeformParams& params, const ParityPair& f,
                           const QuadratureSpec& spec);

double total_mass_line(const DeformParams& params);
double total_mass_plane(const DeformParams& params);

struct HTOptions {
  int level = 1;          // grid resolution level of the coarse pass
  bool refine = true;     // also evaluate at twice the level and report the difference
};

struct HTResult {
  double value = 0.0;  // even + odd
  double error = 0.0;
  double even = 0.0;
  double odd = 0.0;
};

// Hille-Tamarkin norms of the even and odd kernels from L^p(dg_mu) to
// L^q(nu_{mu,lambda}); value is their sum.
HTResult hille_tamarkin_norm(const DeformParams& params, double p, double q,
                             const QuadratureSpec& spec, const HTOptions& opt = {});

// Analytic divergence test for the Hille-Tamarkin integral.
bool ht_diverges(double lambda, double p, double q);

// T(s) = 2 theta / ((2 - theta) s + theta).
double interp_scale(double theta, double s);

enum class Space { line, plane };

// Finite-difference derivative of s -> ||f||_{T(s)} at s = 0 against
// (1/2 - 1/theta) S(f) / ||f||. On the plane f is replaced by B_mu f.
CheckReport entropy_derivative_check(const DeformParams& params, const ComplexPoly& f,
                                     double theta, Space space, const QuadratureSpec& spec);

// Weight kappa_{lambda,s}(z, parity).
double kappa(const DeformParams& params, double q, double s, cplx z, Parity parity);

// kappa^{q_s} times the density of nu_mu.
double nu_s_density(const DeformParams& params, double q, double s, cplx z, Parity parity);

}  // namespace musb
