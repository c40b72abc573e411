#include "musb/functional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "musb/errors.hpp"
#include "musb/quadrature.hpp"
#include "musb/transform.hpp"

namespace musb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTiny = 1e-300;

double clamp_log(double a2) { return a2 < kTiny ? 0.0 : a2 * std::log(a2); }

class LogSum {
 public:
  void add(double l) {
    if (l == -kInf) return;
    if (l > m_) {
      s_ = s_ * std::exp(m_ - l) + 1.0;
      m_ = l;
    } else {
      s_ += std::exp(l - m_);
    }
  }
  double value() const { return s_ == 0.0 ? -kInf : m_ + std::log(s_); }

 private:
  double m_ = -kInf;
  double s_ = 0.0;
};

void check_p(double p) {
  if (!(p >= 1.0)) throw DomainError("Lebesgue index must be >= 1");
}

double plane_power_sum(const DeformParams& params, const ParityPair& f, double p,
                       const QuadratureSpec& spec, double* err) {
  double total = 0.0, e = 0.0;
  for (Parity par : {Parity::even, Parity::odd}) {
    const ComplexPoly& g = par == Parity::even ? f.even : f.odd;
    if (g.is_zero()) continue;
    const auto r = integrate_sheet([&](cplx z) { return std::pow(std::abs(g(z)), p); }, par,
                                   params, spec);
    total += r.value;
    e += r.error;
  }
  if (err) *err = e;
  return total;
}

// ---- Hille-Tamarkin grids ----

struct HTSetup {
  DeformParams params;
  double pp = 1.0;  // conjugate index
  double q = 1.0;
  int level = 1;
  int n_angular = 64;
  double lgam = 0.0;
};

// log of int_R |B_e(z,t)|^pp dg_mu(t) and the same for B_o.
std::array<double, 2> log_inner(const HTSetup& s, cplx z) {
  const double mu = s.params.mu;
  const double r = std::abs(z);
  const double re = std::abs(z.real());
  const double im = std::abs(z.imag());
  const double tstar = s.pp * re / std::numbers::sqrt2;
  const double t_lo = std::max(0.0, tstar - 8.0);
  const double t_hi = tstar + 8.0;
  // Panels short enough to follow the oscillation in t along imaginary directions.
  double h = 0.5;
  if (im * r > 0.0) h = std::min(h, 0.5 * kPi / (std::numbers::sqrt2 * im));
  std::vector<double> edges;
  if (t_lo < 0.5) {
    edges = graded_edges(0.5, 6, h, t_hi);
  } else {
    edges.push_back(t_lo);
    const int n = static_cast<int>(std::ceil((t_hi - t_lo) / h));
    for (int i = 1; i <= n; ++i) edges.push_back(t_lo + (t_hi - t_lo) * i / n);
  }
  static thread_local std::map<int, GaussRule> rules;
  const int npan = 4 * s.level;
  auto it = rules.find(npan);
  if (it == rules.end()) it = rules.emplace(npan, gauss_legendre(npan)).first;
  const GaussRule cr = composite_rule(edges, it->second);
  const double base = -0.5 * (z * z).real();
  LogSum le, lo;
  for (std::size_t i = 0; i < cr.nodes.size(); ++i) {
    const double t = cr.nodes[i];
    if (t <= 0.0) continue;
    const ScaledParts pt = e_mu_parts(s.params, std::numbers::sqrt2 * t * z);
    const double lw = std::log(2.0 * cr.weights[i]) + 2.0 * mu * std::log(t) - t * t - s.lgam;
    const double lb = base + pt.log_scale;
    const double ae = std::abs(pt.even), ao = std::abs(pt.odd);
    if (ae > 0.0) le.add(lw + s.pp * (lb + std::log(ae)));
    if (ao > 0.0) lo.add(lw + s.pp * (lb + std::log(ao)));
  }
  return {le.value(), lo.value()};
}

double log_density(const DeformParams& params, double r, Parity par) {
  const double x = params.lambda * r * r;
  return std::log(params.lambda / kPi) + (0.5 - params.mu) * std::log(2.0) -
         std::lgamma(params.mu + 0.5) + log_macdonald_k(parity_order(params, par), x) +
         (params.mu + 0.5) * std::log(x);
}

// log of the angle integral at radius r, including the factor r, per parity.
std::array<double, 2> log_ring(const HTSetup& s, double r) {
  const int m = static_cast<int>(std::ceil(s.n_angular / 4.0 * s.level * std::max(1.0, r / 8.0)));
  const double lw = std::log(4.0 * (0.5 * kPi) / m * r);
  const double expo = s.q / s.pp;
  LogSum ae, ao;
  for (int j = 0; j < m; ++j) {
    const double th = (j + 0.5) * (0.5 * kPi) / m;
    const auto li = log_inner(s, std::polar(r, th));
    ae.add(lw + expo * li[0]);
    ao.add(lw + expo * li[1]);
  }
  return {ae.value() + log_density(s.params, r, Parity::even),
          ao.value() + log_density(s.params, r, Parity::odd)};
}

std::array<double, 2> ht_pass(const HTSetup& s, double R) {
  const GaussRule g = gauss_legendre(6 * s.level);
  const GaussRule cr = composite_rule(graded_edges(0.5, 8, 0.5, R), g);
  LogSum se, so;
  for (std::size_t i = 0; i < cr.nodes.size(); ++i) {
    const auto lr = log_ring(s, cr.nodes[i]);
    const double lw = std::log(cr.weights[i]);
    se.add(lw + lr[0]);
    so.add(lw + lr[1]);
  }
  return {std::exp(se.value() / s.q), std::exp(so.value() / s.q)};
}

}  // namespace

CheckReport CheckReport::make(std::string name, std::map<std::string, double> params, double lhs,
                              double rhs, double quad_err) {
  CheckReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.quad_err = quad_err;
  r.passed = r.margin >= -quad_err;
  return r;
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  nlohmann::ordered_json pj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) {
    if (std::isfinite(v))
      pj[k] = v;
    else
      pj[k] = v > 0 ? "inf" : "-inf";
  }
  j["params"] = pj;
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  };
  j["lhs"] = num(lhs);
  j["rhs"] = num(rhs);
  j["margin"] = num(margin);
  j["quad_err"] = num(quad_err);
  j["passed"] = passed;
  return j.dump();
}

double conjugate_index(double p) {
  check_p(p);
  if (p == 1.0) return kInf;
  if (is_inf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm_line(const DeformParams& params, const ComplexPoly& f, double p,
                    const QuadratureSpec& spec) {
  check_p(p);
  if (is_inf(p)) {
    if (f.degree() > 0) throw DomainError("lp_norm_line: polynomial is unbounded for p = inf");
    return std::abs(f.coeff(0));
  }
  if (f.is_zero()) return 0.0;
  return lp_norm_line(params, std::function<cplx(double)>([&f](double t) { return f(t); }), p,
                      spec);
}

double lp_norm_line(const DeformParams& params, const std::function<cplx(double)>& f, double p,
                    const QuadratureSpec& spec) {
  check_p(p);
  if (is_inf(p)) throw DomainError("lp_norm_line: p = inf needs a bounded function");
  const auto r = integrate_line_real([&](double t) { return std::pow(std::abs(f(t)), p); },
                                     LineWeight::ground_state, params, spec);
  return std::pow(r.value, 1.0 / p);
}

double lp_norm_plane(const DeformParams& params, const ParityPair& f, double p,
                     const QuadratureSpec& spec) {
  check_p(p);
  if (is_inf(p)) {
    if (f.even.degree() > 0 || !f.odd.is_zero())
      throw DomainError("lp_norm_plane: function is unbounded for p = inf");
    return std::abs(f.even.coeff(0));
  }
  return std::pow(plane_power_sum(params, f, p, spec, nullptr), 1.0 / p);
}

EntropyValue entropy_line(const DeformParams& params, const ComplexPoly& f,
                          const QuadratureSpec& spec) {
  if (f.is_zero()) return {};
  const auto n = integrate_line_real([&](double t) { return std::norm(f(t)); },
                                     LineWeight::ground_state, params, spec);
  const auto i = integrate_line_real([&](double t) { return clamp_log(std::norm(f(t))); },
                                     LineWeight::ground_state, params, spec);
  const double N = n.value;
  return {i.value - N * std::log(N), i.error + n.error * std::abs(std::log(N) + 1.0), N};
}

EntropyValue entropy_plane(const DeformParams& params, const ParityPair& f,
                           const QuadratureSpec& spec) {
  double N = 0.0, I = 0.0, en = 0.0, ei = 0.0;
  for (Parity par : {Parity::even, Parity::odd}) {
    const ComplexPoly& g = par == Parity::even ? f.even : f.odd;
    if (g.is_zero()) continue;
    const auto n = integrate_sheet([&](cplx z) { return std::norm(g(z)); }, par, params, spec);
    const auto i =
        integrate_sheet([&](cplx z) { return clamp_log(std::norm(g(z))); }, par, params, spec);
    N += n.value;
    I += i.value;
    en += n.error;
    ei += i.error;
  }
  if (N == 0.0) return {};
  return {I - N * std::log(N), ei + en * std::abs(std::log(N) + 1.0), N};
}

double total_mass_line(const DeformParams&) { return 1.0; }

double total_mass_plane(const DeformParams& params) {
  return parity_mass(params, Parity::even) + parity_mass(params, Parity::odd);
}

bool ht_diverges(double lambda, double p, double q) {
  const double pp = conjugate_index(p);
  if (is_inf(pp)) return true;
  return (-0.5 * q + 0.5 * q * pp - lambda >= 0.0) || (0.5 * q - lambda >= 0.0);
}

HTResult hille_tamarkin_norm(const DeformParams& params, double p, double q,
                             const QuadratureSpec& spec, const HTOptions& opt) {
  spec.validate();
  if (!(p > 1.0)) throw DomainError("hille_tamarkin_norm: p must be > 1");
  if (!(q >= 1.0) || is_inf(q)) throw DomainError("hille_tamarkin_norm: q must be in [1, inf)");
  if (opt.level < 1) throw DomainError("hille_tamarkin_norm: level must be >= 1");
  HTSetup s{params, conjugate_index(p), q, opt.level, spec.n_angular,
            std::lgamma(params.mu + 0.5)};
  const bool analytic = ht_diverges(params.lambda, p, q);
  const double decay =
      std::min(params.lambda - 0.5 * q, params.lambda + 0.5 * q - 0.5 * q * s.pp);
  double R = effective_r_max(params, spec);
  if (!analytic) R = std::min(60.0, std::max(R, std::sqrt(45.0 / decay) + 1.0));

  std::array<std::array<double, 2>, 4> prof{};
  for (int k = 0; k < 4; ++k) prof[k] = log_ring(s, R - 3.0 + k);
  bool numeric = false;
  for (int par = 0; par < 2; ++par) {
    bool grows = true;
    for (int k = 1; k < 4; ++k) grows = grows && prof[k][par] > prof[k - 1][par];
    numeric = numeric || grows;
  }
  if (analytic && numeric)
    throw NonConvergent("hille_tamarkin_norm: radial integrand grows, norm is infinite");
  if (analytic != numeric)
    throw ToleranceNotMet("hille_tamarkin_norm: growth test and analytic test disagree", kInf);

  auto coarse = ht_pass(s, R);
  HTResult out;
  if (!opt.refine) {
    out.even = coarse[0];
    out.odd = coarse[1];
    out.value = out.even + out.odd;
    return out;
  }
  HTSetup f = s;
  f.level = 2 * s.level;
  const auto fine = ht_pass(f, R);
  out.even = fine[0];
  out.odd = fine[1];
  out.value = out.even + out.odd;
  out.error = std::abs(fine[0] - coarse[0]) + std::abs(fine[1] - coarse[1]);
  if (!std::isfinite(out.value)) throw NonConvergent("hille_tamarkin_norm: value is not finite");
  return out;
}

double interp_scale(double theta, double s) {
  if (s < 0.0 || s > 1.0) throw DomainError("interp_scale: s must lie in [0,1]");
  if (is_inf(theta)) {
    if (s == 1.0) return kInf;
    return 2.0 / (1.0 - s);
  }
  const double den = (2.0 - theta) * s + theta;
  if (!(den > 0.0)) throw DomainError("interp_scale: denominator must be positive");
  return 2.0 * theta / den;
}

CheckReport entropy_derivative_check(const DeformParams& params, const ComplexPoly& f,
                                     double theta, Space space, const QuadratureSpec& spec) {
  if (f.is_zero()) throw DomainError("entropy_derivative_check: f must be nonzero");
  if (!(theta >= 1.0) || is_inf(theta))
    throw DomainError("entropy_derivative_check: theta must be finite and >= 1");
  const ParityPair bf = space == Space::plane ? parity_split(apply_B_poly(params, f)) : ParityPair{};
  auto norm_at = [&](double s) {
    const double p = interp_scale(theta, s);
    return space == Space::line ? lp_norm_line(params, f, p, spec)
                                : lp_norm_plane(params, bf, p, spec);
  };
  const EntropyValue S = space == Space::line ? entropy_line(params, f, spec)
                                              : entropy_plane(params, bf, spec);
  const double n0 = std::sqrt(S.norm2);
  const double phi0 = norm_at(0.0);
  auto D = [&](double h) { return (norm_at(h) - phi0) / h; };
  auto R1 = [&](double h) { return 2.0 * D(0.5 * h) - D(h); };
  const double h = 1e-2;
  const double fd = (4.0 * R1(0.5 * h) - R1(h)) / 3.0;
  const double formula = (0.5 - 1.0 / theta) * S.value / n0;
  const double qerr = S.error / n0 + std::max(spec.abs_tol, spec.rel_tol * n0) / (0.25 * h);
  const double tol = std::max(1e-4, 50.0 * qerr);
  CheckReport r = CheckReport::make(
      "entropy_derivative",
      {{"mu", params.mu}, {"lambda", params.lambda}, {"theta", theta},
       {"space", space == Space::line ? 0.0 : 1.0}},
      fd, formula, tol);
  r.margin = -std::abs(fd - formula);
  r.passed = -r.margin <= tol;
  return r;
}

double kappa(const DeformParams& params, double q, double s, cplx z, Parity parity) {
  const double lam = params.lambda;
  if (lam < 1.0) throw DomainError("kappa: lambda must be >= 1");
  if (!(q >= 1.0) || !(q < 2.0 * lam)) throw DomainError("kappa: q must satisfy 1 <= q < 2 lambda");
  if (s < 0.0 || s > 1.0) throw DomainError("kappa: s must lie in [0,1]");
  if (s == 0.0 || lam == 1.0) return 1.0;
  const double mu = params.mu;
  const double nu = parity_order(params, parity);
  const double x = std::norm(z);
  double lr;
  if (x == 0.0) {
    lr = (mu + 1.5 - std::abs(nu)) * std::log(lam);
  } else {
    lr = (mu + 1.5) * std::log(lam) + log_macdonald_k(nu, lam * x) - log_macdonald_k(nu, x);
  }
  return std::exp(s / q * lr);
}

double nu_s_density(const DeformParams& params, double q, double s, cplx z, Parity parity) {
  const double k = kappa(params, q, s, z, parity);
  const double qs = interp_scale(q, s);
  return std::pow(k, qs) * nu_density(params.with_lambda(1.0), z, parity);
}

}  // namespace musb
