#pragma once

#include <functional>
#include <istream>
#include <map>
#include <string>

#include "musb/poly.hpp"
#include "musb/quadrature.hpp"
#include "musb/special.hpp"

namespace musb {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double r_max = 8.0;
  int n_angular = 64;
  int max_depth = 40;
  double t_max = 10.0;

  void validate() const;

  // Keys: abs_tol rel_tol r_max n_angular max_depth t_max (also tol, rmax, angular).
  static QuadratureSpec from_key_values(const std::map<std::string, std::string>& kv,
                                        QuadratureSpec base);
  static QuadratureSpec from_key_values(const std::map<std::string, std::string>& kv);
  // Plain text, one key=value per line, '#' starts a comment.
  static QuadratureSpec from_config(std::istream& in, QuadratureSpec base);
  static QuadratureSpec from_config(std::istream& in);
};

std::map<std::string, std::string> parse_key_value(std::istream& in);

enum class Parity { even = 1, odd = -1 };

inline int sign_of(Parity p) { return p == Parity::even ? 1 : -1; }

// Order of the Macdonald function in the parity density: mu - 1/2 or mu + 1/2.
inline double parity_order(const DeformParams& params, Parity p) {
  return p == Parity::even ? params.mu - 0.5 : params.mu + 0.5;
}

struct ParityPair {
  ComplexPoly even;
  ComplexPoly odd;
};

ParityPair parity_split(const ComplexPoly& f);

// Checks even(-z) = even(z), odd(-z) = -odd(z) on pseudo-random points.
bool satisfies_parity(const ParityPair& f, double tol = 1e-12);

// A function on C x Z_2: one component per parity sheet.
struct PlaneFunction {
  std::function<cplx(cplx)> on_even;
  std::function<cplx(cplx)> on_odd;
};

PlaneFunction as_plane_function(const ParityPair& f);

double ground_state_density(const DeformParams& params, double t);

// Density of nu_{mu,lambda}(., parity) against dx dy.
double nu_density(const DeformParams& params, cplx z, Parity parity);

// Density of s = lambda |z|^2 after averaging the angle.
double nu_radial_density(const DeformParams& params, double s, Parity parity);

// Closed-form total mass of each parity sheet.
double parity_mass(const DeformParams& params, Parity parity);

// Radial truncation actually used: max(spec.r_max, 3 / sqrt(min(lambda, 1))).
double effective_r_max(const DeformParams& params, const QuadratureSpec& spec);

enum class LineWeight { lebesgue, ground_state, abs2mu };

// Integral over R of f(t) w(t) dt; tail shells beyond t_max are added until
// negligible.
QuadResult<cplx> integrate_line(const std::function<cplx(double)>& f, LineWeight weight,
                                const DeformParams& params, const QuadratureSpec& spec);
QuadResult<double> integrate_line_real(const std::function<double(double)>& f,
                                       LineWeight weight, const DeformParams& params,
                                       const QuadratureSpec& spec);

using PlaneIntegrand = std::function<double(cplx, Parity)>;
using PlaneIntegrandC = std::function<cplx(cplx, Parity)>;

// Sum over both parity sheets of the integral of F against nu_{mu,lambda}.
QuadResult<double> integrate_plane(const PlaneIntegrand& f, const DeformParams& params,
                                   const QuadratureSpec& spec);
QuadResult<cplx> integrate_plane_complex(const PlaneIntegrandC& f, const DeformParams& params,
                                         const QuadratureSpec& spec);

// Integral over a single parity sheet.
QuadResult<double> integrate_sheet(const std::function<double(cplx)>& f, Parity parity,
                                   const DeformParams& params, const QuadratureSpec& spec);

}  // namespace musb
