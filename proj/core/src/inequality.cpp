#include "musb/inequality.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "musb/errors.hpp"

namespace musb {
namespace {

double inv(double p) { return is_inf(p) ? 0.0 : 1.0 / p; }

CheckReport equality_report(std::string name, std::map<std::string, double> params, double lhs,
                            double rhs, double quad_err) {
  CheckReport r = CheckReport::make(std::move(name), std::move(params), lhs, rhs, quad_err);
  r.margin = -std::abs(rhs - lhs);
  r.passed = r.margin >= -quad_err;
  return r;
}

HTResult norm_bound(const DeformParams& params, double p, double q, const QuadratureSpec& spec,
                    const std::optional<HTResult>& A) {
  if (A) return *A;
  return hille_tamarkin_norm(params, p, q, spec);
}

// Relative tolerance used for norms computed by plane or line quadrature.
double norm_budget(const QuadratureSpec& spec, double v) {
  return 10.0 * spec.rel_tol * std::abs(v) + spec.abs_tol;
}

// ||B f||_{L^{q_s}} against nu_mu weighted by kappa^{q_s}.
double weighted_plane_norm(const DeformParams& params, const ParityPair& bf, double q, double s,
                           const QuadratureSpec& spec) {
  const double qs = interp_scale(q, s);
  const DeformParams p1 = params.with_lambda(1.0);
  double total = 0.0;
  for (Parity par : {Parity::even, Parity::odd}) {
    const ComplexPoly& g = par == Parity::even ? bf.even : bf.odd;
    if (g.is_zero()) continue;
    total += integrate_sheet(
                 [&](cplx z) {
                   return std::pow(std::abs(g(z)) * kappa(params, q, s, z, par), qs);
                 },
                 par, p1, spec)
                 .value;
  }
  return std::pow(total, 1.0 / qs);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

bool region_holds(const RegionQuery& rq) {
  if (!(rq.p_inv >= 0.0 && rq.p_inv < 1.0) || !(rq.lambda > 0.0)) return false;
  const double cut = 1.0 / (2.0 * rq.lambda);
  const double hyp = cut * rq.p_inv / (1.0 - rq.p_inv);
  return rq.q_inv > hyp && rq.q_inv > cut && rq.q_inv <= 1.0;
}

double lambda_threshold(double p_inv, double q_inv) {
  if (!(p_inv >= 0.0 && p_inv < 1.0)) throw DomainError("lambda_threshold: p_inv must be in [0,1)");
  if (!(q_inv > 0.0 && q_inv <= 1.0)) throw DomainError("lambda_threshold: q_inv must be in (0,1]");
  return std::max(1.0 / (2.0 * q_inv), p_inv / (2.0 * q_inv * (1.0 - p_inv)));
}

std::vector<RegionRow> region_boundary(double lambda, int n_samples) {
  if (!(lambda > 0.0)) throw DomainError("region_boundary: lambda must be > 0");
  if (n_samples < 2) throw DomainError("region_boundary: need at least 2 samples");
  const double end = 2.0 * lambda / (2.0 * lambda + 1.0);
  const double cut = 1.0 / (2.0 * lambda);
  std::vector<RegionRow> rows;
  rows.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double p = i == n_samples - 1 ? end : end * i / (n_samples - 1);
    rows.push_back({p, cut * p / (1.0 - p), cut});
  }
  return rows;
}

std::string region_boundary_csv(double lambda, int n_samples) {
  std::ostringstream os;
  os << "p_inv,q_inv_boundary,q_inv_cut\r\n";
  for (const auto& r : region_boundary(lambda, n_samples))
    os << fmt(r.p_inv) << ',' << fmt(r.q_inv_boundary) << ',' << fmt(r.q_inv_cut) << "\r\n";
  return os.str();
}

CheckReport check_lemma_2_1(const DeformParams& params, cplx z, double q) {
  if (!(q >= 1.0)) throw DomainError("check_lemma_2_1: q must be >= 1");
  const double lhs = std::pow(std::abs(e_mu_series(params, z)), q);
  const double rhs = e_mu_series(params, cplx(q * z.real(), 0.0)).real();
  return CheckReport::make("lemma_2_1",
                           {{"mu", params.mu}, {"q", q}, {"re_z", z.real()}, {"im_z", z.imag()}},
                           lhs, rhs, 1e-13 * std::max(1.0, std::abs(rhs)));
}

CheckReport check_eq_3_3(const DeformParams& params, double pprime, double x,
                         const QuadratureSpec& spec) {
  const double g = std::tgamma(params.mu + 0.5);
  const auto r = integrate_line_real(
      [&](double t) { return e_mu(params, cplx(std::numbers::sqrt2 * pprime * x * t, 0.0)).real(); },
      LineWeight::ground_state, params, spec);
  const double lhs = g * r.value;
  const double rhs = g * std::exp(0.5 * pprime * pprime * x * x);
  return equality_report("eq_3_3", {{"mu", params.mu}, {"pprime", pprime}, {"x", x}}, lhs, rhs,
                         g * r.error + 1e-12 * rhs);
}

CheckReport check_parity_mass(const DeformParams& params, Parity parity,
                              const QuadratureSpec& spec) {
  const auto r = integrate_sheet([](cplx) { return 1.0; }, parity, params, spec);
  const double rhs = parity_mass(params, parity);
  return equality_report(parity == Parity::even ? "mass_even" : "mass_odd",
                         {{"mu", params.mu}, {"lambda", params.lambda}}, r.value, rhs,
                         r.error + 1e-12 * rhs);
}

CheckReport check_hausdorff_young(const DeformParams& params, double p, double q, double s,
                                  const ComplexPoly& f, const QuadratureSpec& spec,
                                  const std::optional<HTResult>& A) {
  if (!(q >= 1.0 && q < 2.0)) throw DomainError("check_hausdorff_young: need 1 <= q < 2");
  if (!(p > 1.0 + 0.5 * q)) throw DomainError("check_hausdorff_young: need p > 1 + q/2");
  if (s < 0.0 || s > 1.0) throw DomainError("check_hausdorff_young: s must lie in [0,1]");
  const DeformParams p1 = params.with_lambda(1.0);
  const double ps = interp_scale(p, s), qs = interp_scale(q, s);
  const ParityPair bf = parity_split(apply_B_poly(p1, f));
  const double lhs = lp_norm_plane(p1, bf, qs, spec);
  const double fn = lp_norm_line(p1, f, ps, spec);
  double rhs = fn, err = norm_budget(spec, lhs) + norm_budget(spec, fn);
  if (s > 0.0) {
    const HTResult a = norm_bound(p1, p, q, spec, A);
    const double as = std::pow(a.value, s);
    rhs = as * fn;
    err = norm_budget(spec, lhs) + as * norm_budget(spec, fn) + s * rhs * a.error / a.value;
  }
  std::map<std::string, double> pm{{"mu", params.mu}, {"lambda", 1.0}, {"p", p}, {"q", q}, {"s", s}};
  if (s == 0.0) return equality_report("hausdorff_young", pm, lhs, rhs, err);
  return CheckReport::make("hausdorff_young", pm, lhs, rhs, err);
}

CheckReport check_hirschman(const DeformParams& params, double p, double q, const ComplexPoly& f,
                            const QuadratureSpec& spec, const std::optional<HTResult>& A) {
  if (!(q >= 1.0 && q < 2.0)) throw DomainError("check_hirschman: need 1 <= q < 2");
  if (!(p > 1.0 + 0.5 * q)) throw DomainError("check_hirschman: need p > 1 + q/2");
  const DeformParams p1 = params.with_lambda(1.0);
  std::map<std::string, double> pm{{"mu", params.mu}, {"lambda", 1.0}, {"p", p}, {"q", q}};
  if (f.is_zero()) return CheckReport::make("hirschman", pm, 0.0, 0.0, 0.0);
  const HTResult a = norm_bound(p1, p, q, spec, A);
  const EntropyValue sf = entropy_line(p1, f, spec);
  const EntropyValue sb = entropy_plane(p1, parity_split(apply_B_poly(p1, f)), spec);
  const double cp = inv(p) - 0.5, cq = inv(q) - 0.5;
  const double la = std::log(a.value);
  const double lhs = cp * sf.value;
  const double rhs = cq * sb.value + la * sf.norm2;
  const double err = std::abs(cp) * sf.error + std::abs(cq) * sb.error +
                     sf.norm2 * a.error / a.value + std::abs(la) * norm_budget(spec, sf.norm2);
  return CheckReport::make("hirschman", pm, lhs, rhs, err);
}

CheckReport check_weighted_hy(const DeformParams& params, double p, double q, double s,
                              const ComplexPoly& f, const QuadratureSpec& spec,
                              const std::optional<HTResult>& A) {
  const double lam = params.lambda;
  if (lam < 1.0) throw DomainError("check_weighted_hy: lambda must be >= 1");
  if (!region_holds({inv(p), inv(q), lam}))
    throw DomainError("check_weighted_hy: (p, q, lambda) outside the admissible region");
  if (s < 0.0 || s > 1.0) throw DomainError("check_weighted_hy: s must lie in [0,1]");
  const double ps = interp_scale(p, s);
  const ParityPair bf = parity_split(apply_B_poly(params, f));
  const double lhs = weighted_plane_norm(params, bf, q, s, spec);
  const double fn = lp_norm_line(params, f, ps, spec);
  std::map<std::string, double> pm{{"mu", params.mu}, {"lambda", lam}, {"p", p}, {"q", q}, {"s", s}};
  if (s == 1.0) pm["identity_gap"] = std::abs(lhs - lp_norm_plane(params, bf, q, spec));
  if (s == 0.0)
    return equality_report("weighted_hy", pm, lhs, fn,
                           norm_budget(spec, lhs) + norm_budget(spec, fn));
  const HTResult a = norm_bound(params, p, q, spec, A);
  const double as = std::pow(a.value, s);
  const double rhs = as * fn;
  const double err =
      norm_budget(spec, lhs) + as * norm_budget(spec, fn) + s * rhs * a.error / a.value;
  return CheckReport::make("weighted_hy", pm, lhs, rhs, err);
}

CheckReport check_log_sobolev(const DeformParams& params, double p, double q,
                              const ComplexPoly& f, const QuadratureSpec& spec,
                              const std::optional<HTResult>& A) {
  const double lam = params.lambda;
  if (lam < 1.0) throw DomainError("check_log_sobolev: lambda must be >= 1");
  if (!(q >= 1.0 && q < 2.0 * lam)) throw DomainError("check_log_sobolev: need 1 <= q < 2 lambda");
  if (!(p > 1.0 + q / (2.0 * lam))) throw DomainError("check_log_sobolev: need p > 1 + q/(2 lambda)");
  std::map<std::string, double> pm{{"mu", params.mu}, {"lambda", lam}, {"p", p}, {"q", q}};
  if (lam == 1.0) {
    // Degenerates to the entropy inequality.
    CheckReport r = check_hirschman(params, p, q, f, spec, A);
    r.name = "log_sobolev";
    return r;
  }
  if (f.is_zero()) return CheckReport::make("log_sobolev", pm, 0.0, 0.0, 0.0);
  const DeformParams p1 = params.with_lambda(1.0);
  const HTResult a = norm_bound(params, p, q, spec, A);
  const ParityPair bf = parity_split(apply_B_poly(p1, f));
  const EntropyValue sf = entropy_line(p1, f, spec);
  const EntropyValue sb = entropy_plane(p1, bf, spec);
  const Estimate e = dilation_energy(params, bf, spec);
  const double cp = 0.5 - inv(p), cq = 0.5 - inv(q);
  const double la = std::log(a.value);
  const double lhs = cq * sb.value - cp * sf.value;
  const double rhs = e.value / q + (la - (2.0 * params.mu + 3.0) / (2.0 * q) * std::log(lam)) * sf.norm2;
  const double err = std::abs(cp) * sf.error + std::abs(cq) * sb.error + e.error / q +
                     sf.norm2 * a.error / a.value + std::abs(la) * norm_budget(spec, sf.norm2);
  return CheckReport::make("log_sobolev", pm, lhs, rhs, err);
}

std::vector<ComplexPoly> default_family(const DeformParams& params) {
  return {ComplexPoly{1.0}, ComplexPoly{0.0, 1.0}, ComplexPoly{0.0, 0.0, 1.0},
          ComplexPoly{0.0, 1.0, 0.0, cplx(0.0, 1.0)}, zeta_poly(params, 3)};
}

CheckReport check_unitarity_lambda(const DeformParams& params, const FockCoeffs& c) {
  if (c.tag != BasisTag::xi) throw DomainError("check_unitarity_lambda: coefficients must be xi-tagged");
  const double n2 = c.norm2();
  if (std::abs(n2 - 1.0) > 1e-12) throw DomainError("check_unitarity_lambda: coefficients must have unit norm");
  const double lam = params.lambda;
  if (!(lam > 0.0)) throw DomainError("check_unitarity_lambda: lambda must be > 0");
  double value = 0.0, margin = 0.0;
  for (unsigned n = 0; n < c.coeffs.size(); ++n) {
    const double a2 = std::norm(c.coeffs[n]);
    const double w = std::pow(lam, -static_cast<double>(n));
    value += w * a2;
    margin += (1.0 - w) * a2;
  }
  CheckReport r = CheckReport::make("unitarity_lambda", {{"mu", params.mu}, {"lambda", lam}},
                                    value, 1.0, 0.0);
  r.margin = margin;
  r.passed = margin >= 0.0;
  return r;
}

}  // namespace musb
