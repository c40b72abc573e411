#include "musb/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "musb/errors.hpp"

namespace musb {
namespace {

constexpr double kPi = std::numbers::pi;

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw DomainError("config: cannot parse " + key + "=" + v);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
struct Acc;
template <>
struct Acc<double> {
  KahanSum s;
  void add(double v) { s.add(v); }
  double value() const { return s.value(); }
};
template <>
struct Acc<cplx> {
  KahanSum re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// Trapezoid mean over the circle |z| = r, doubling the node count until the
// coarse and fine means agree.
template <class T>
T angular_mean(const std::function<T(cplx)>& f, double r, int n0) {
  const int n_max = 4096;
  int n = std::max(4, n0);
  std::vector<T> vals(n);
  double scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    vals[k] = f(std::polar(r, th));
    scale += std::abs(vals[k]);
  }
  auto mean_of = [](const std::vector<T>& v, int stride) {
    Acc<T> a;
    for (std::size_t k = 0; k < v.size(); k += stride) a.add(v[k]);
    return a.value() / static_cast<double>((v.size() + stride - 1) / stride);
  };
  T fine = mean_of(vals, 1);
  T coarse = mean_of(vals, 2);
  while (std::abs(fine - coarse) > 1e-13 * (scale / n) + 1e-300 && n < n_max) {
    std::vector<T> next(2 * n);
    for (int k = 0; k < n; ++k) next[2 * k] = vals[k];
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * kPi * (k + 0.5) / n;
      next[2 * k + 1] = f(std::polar(r, th));
      scale += std::abs(next[2 * k + 1]);
    }
    vals.swap(next);
    n *= 2;
    coarse = fine;
    fine = mean_of(vals, 1);
  }
  return fine;
}

template <class T>
QuadResult<T> gk(const std::function<T(double)>& f, double a, double b, const AdaptiveOptions& o) {
  return gauss_kronrod(f, a, b, o);
}

// Adaptive integration over consecutive segments, then doubling tail shells
// until the shell contribution is negligible.
template <class T>
QuadResult<T> integrate_with_tail(const std::function<T(double)>& g, std::vector<double> edges,
                                  double abs_tol, double rel_tol, int max_depth, const char* who) {
  AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_depth = max_depth;
  opt.abs_tol = abs_tol / static_cast<double>(edges.size());
  QuadResult<T> out;
  Acc<T> acc;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto r = gk<T>(g, edges[i], edges[i + 1], opt);
    acc.add(r.value);
    err += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  double end = edges.back();
  std::vector<double> shells;
  bool settled = false;
  for (int k = 0; k < 6; ++k) {
    const auto r = gk<T>(g, end, 2.0 * end, opt);
    out.evaluations += r.evaluations;
    end *= 2.0;
    const double mag = std::abs(r.value);
    shells.push_back(mag);
    acc.add(r.value);
    err += r.error;
    out.converged = out.converged && r.converged;
    if (!std::isfinite(mag)) throw NonConvergent(std::string(who) + ": integrand is not finite");
    const std::size_t m = shells.size();
    if (m >= 3 && shells[m - 1] > shells[m - 2] && shells[m - 2] > shells[m - 3] &&
        shells[m - 1] > abs_tol)
      throw NonConvergent(std::string(who) + ": radial shells grow instead of decaying");
    if (mag <= 0.1 * std::max(abs_tol, rel_tol * std::abs(acc.value()))) {
      settled = true;
      break;
    }
  }
  if (!settled) out.converged = false;
  out.value = acc.value();
  out.error = err;
  return out;
}

template <class T>
QuadResult<T> sheet_impl(const std::function<T(cplx)>& f, Parity parity,
                         const DeformParams& params, const QuadratureSpec& spec) {
  spec.validate();
  const double lam = params.lambda;
  const double rmax = effective_r_max(params, spec);
  const double smax = lam * rmax * rmax;
  const int n_ang = spec.n_angular;
  std::function<T(double)> g = [&](double s) -> T {
    const double w = nu_radial_density(params, s, parity);
    if (w == 0.0) return T{};
    return w * angular_mean<T>(f, std::sqrt(s / lam), n_ang);
  };
  std::vector<double> edges{0.0};
  for (double e = 0.25; e < smax; e *= 4.0) edges.push_back(e);
  edges.push_back(smax);
  return integrate_with_tail<T>(g, edges, 0.5 * spec.abs_tol, spec.rel_tol, spec.max_depth,
                                "integrate_plane");
}

double line_weight(LineWeight w, const DeformParams& params, double t) {
  switch (w) {
    case LineWeight::lebesgue:
      return 1.0;
    case LineWeight::ground_state:
      return ground_state_density(params, t);
    case LineWeight::abs2mu:
      return params.mu == 0.0 ? 1.0 : std::pow(std::abs(t), 2.0 * params.mu);
  }
  return 0.0;
}

template <class T>
QuadResult<T> line_impl(const std::function<T(double)>& f, LineWeight weight,
                        const DeformParams& params, const QuadratureSpec& spec) {
  spec.validate();
  std::function<T(double)> g = [&](double t) -> T {
    const double w = line_weight(weight, params, t);
    if (w == 0.0) return T{};
    return (f(t) + f(-t)) * w;
  };
  std::vector<double> edges{0.0};
  for (double e : {0.5, 1.5, 3.0, 5.0})
    if (e < spec.t_max) edges.push_back(e);
  edges.push_back(spec.t_max);
  auto r = integrate_with_tail<T>(g, edges, spec.abs_tol, spec.rel_tol, spec.max_depth,
                                  "integrate_line");
  if (!r.converged) throw ToleranceNotMet("integrate_line: tolerance not met", r.error);
  return r;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be > 0");
  if (!(r_max > 0.0) || !(t_max > 0.0)) throw DomainError("QuadratureSpec: r_max, t_max must be > 0");
  if (n_angular < 4) throw DomainError("QuadratureSpec: n_angular must be >= 4");
  if (max_depth < 1) throw DomainError("QuadratureSpec: max_depth must be >= 1");
}

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

QuadratureSpec QuadratureSpec::from_key_values(const std::map<std::string, std::string>& kv,
                                               QuadratureSpec base) {
  for (const auto& [k, v] : kv) {
    if (k == "abs_tol") {
      base.abs_tol = parse_real(k, v);
    } else if (k == "tol") {
      base.abs_tol = parse_real(k, v);
      base.rel_tol = 10.0 * base.abs_tol;
    } else if (k == "rel_tol") {
      base.rel_tol = parse_real(k, v);
    } else if (k == "r_max" || k == "rmax") {
      base.r_max = parse_real(k, v);
    } else if (k == "t_max" || k == "tmax") {
      base.t_max = parse_real(k, v);
    } else if (k == "n_angular" || k == "angular") {
      base.n_angular = static_cast<int>(parse_real(k, v));
    } else if (k == "max_depth") {
      base.max_depth = static_cast<int>(parse_real(k, v));
    }
  }
  base.validate();
  return base;
}

QuadratureSpec QuadratureSpec::from_key_values(const std::map<std::string, std::string>& kv) {
  return from_key_values(kv, QuadratureSpec());
}

QuadratureSpec QuadratureSpec::from_config(std::istream& in) {
  return from_config(in, QuadratureSpec());
}

QuadratureSpec QuadratureSpec::from_config(std::istream& in, QuadratureSpec base) {
  return from_key_values(parse_key_value(in), base);
}

ParityPair parity_split(const ComplexPoly& f) {
  std::vector<cplx> e(f.size(), cplx{}), o(f.size(), cplx{});
  for (std::size_t n = 0; n < f.size(); ++n) (n % 2 == 0 ? e : o)[n] = f.coeff(n);
  return {ComplexPoly(std::move(e)), ComplexPoly(std::move(o))};
}

bool satisfies_parity(const ParityPair& f, double tol) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 32; ++i) {
    const cplx z(u(rng), u(rng));
    const cplx e1 = f.even(z), e2 = f.even(-z);
    const cplx o1 = f.odd(z), o2 = f.odd(-z);
    const double se = std::max(1.0, std::abs(e1));
    const double so = std::max(1.0, std::abs(o1));
    if (std::abs(e1 - e2) > tol * se || std::abs(o1 + o2) > tol * so) return false;
  }
  return true;
}

PlaneFunction as_plane_function(const ParityPair& f) {
  return {[e = f.even](cplx z) { return e(z); }, [o = f.odd](cplx z) { return o(z); }};
}

double ground_state_density(const DeformParams& params, double t) {
  const double mu = params.mu;
  const double pw = mu == 0.0 ? 1.0 : std::pow(std::abs(t), 2.0 * mu);
  return std::exp(-t * t - std::lgamma(mu + 0.5)) * pw;
}

double nu_radial_density(const DeformParams& params, double s, Parity parity) {
  const double mu = params.mu;
  if (s < 0.0) throw DomainError("nu_radial_density: s must be >= 0");
  if (s == 0.0) {
    if (parity == Parity::odd || mu == 0.0) return 1.0;
    return 0.0;
  }
  const double nu = parity_order(params, parity);
  const double lg = (0.5 - mu) * std::log(2.0) - std::lgamma(mu + 0.5) + log_macdonald_k(nu, s) +
                    (mu + 0.5) * std::log(s);
  return std::exp(lg);
}

double nu_density(const DeformParams& params, cplx z, Parity parity) {
  const double s = params.lambda * std::norm(z);
  return nu_radial_density(params, s, parity) * params.lambda / kPi;
}

double parity_mass(const DeformParams& params, Parity parity) {
  if (parity == Parity::even) return 1.0;
  const double mu = params.mu;
  return std::sqrt(kPi) * std::exp(std::lgamma(mu + 1.0) - std::lgamma(mu + 0.5));
}

double effective_r_max(const DeformParams& params, const QuadratureSpec& spec) {
  return std::max(spec.r_max, 3.0 / std::sqrt(std::min(params.lambda, 1.0)));
}

QuadResult<cplx> integrate_line(const std::function<cplx(double)>& f, LineWeight weight,
                                const DeformParams& params, const QuadratureSpec& spec) {
  return line_impl<cplx>(f, weight, params, spec);
}

QuadResult<double> integrate_line_real(const std::function<double(double)>& f,
                                       LineWeight weight, const DeformParams& params,
                                       const QuadratureSpec& spec) {
  return line_impl<double>(f, weight, params, spec);
}

QuadResult<double> integrate_sheet(const std::function<double(cplx)>& f, Parity parity,
                                   const DeformParams& params, const QuadratureSpec& spec) {
  auto r = sheet_impl<double>(f, parity, params, spec);
  if (!r.converged) throw ToleranceNotMet("integrate_plane: tolerance not met", r.error);
  return r;
}

QuadResult<double> integrate_plane(const PlaneIntegrand& f, const DeformParams& params,
                                   const QuadratureSpec& spec) {
  QuadResult<double> out;
  for (Parity p : {Parity::even, Parity::odd}) {
    std::function<double(cplx)> g = [&](cplx z) { return f(z, p); };
    const auto r = sheet_impl<double>(g, p, params, spec);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  if (!out.converged) throw ToleranceNotMet("integrate_plane: tolerance not met", out.error);
  return out;
}

QuadResult<cplx> integrate_plane_complex(const PlaneIntegrandC& f, const DeformParams& params,
                                         const QuadratureSpec& spec) {
  QuadResult<cplx> out;
  for (Parity p : {Parity::even, Parity::odd}) {
    std::function<cplx(cplx)> g = [&](cplx z) { return f(z, p); };
    const auto r = sheet_impl<cplx>(g, p, params, spec);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  if (!out.converged) throw ToleranceNotMet("integrate_plane: tolerance not met", out.error);
  return out;
}

}  // namespace musb
