#include "musb_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "musb/errors.hpp"
#include "musb/functional.hpp"
#include "musb/inequality.hpp"
#include "musb/measure.hpp"
#include "musb/special.hpp"
#include "musb/transform.hpp"

namespace musb::cli {
namespace {

using json = nlohmann::ordered_json;

const char* kFooter =
    "Exit codes: 0 all checks passed, 1 some check failed, 2 domain or usage error,\n"
    "3 tolerance not met or integral does not converge.\n"
    "Every flag can also be set through the environment as MUSB_<FLAG> (for example\n"
    "MUSB_MU=1) or through a key=value file given with --config.\n"
    "Default sample for verify and sweep: mu=0.5 lambda=1 p=4 q=1 s=0.5; test\n"
    "family {1, t, t^2, t+it^3, zeta_3}.";

struct RunConfig {
  std::string command;
  DeformParams params{0.5, 1.0};
  double p = 4.0;
  double q = 1.0;
  double s = 0.5;
  QuadratureSpec quadrature;
  std::string output_path;
  std::string format;
};

double parse_index(const std::string& v) {
  std::string t = v;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw DomainError("not a number: " + v);
  }
  if (pos != t.size()) throw DomainError("not a number: " + v);
  return d;
}

cplx parse_complex(const std::string& v) {
  const auto comma = v.find(',');
  if (comma == std::string::npos) return {parse_index(v), 0.0};
  return {parse_index(v.substr(0, comma)), parse_index(v.substr(comma + 1))};
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

std::string num(cplx v) {
  if (v.imag() == 0.0) return num(v.real());
  return "(" + num(v.real()) + ", " + num(v.imag()) + ")";
}

json jnum(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json jcplx(cplx v) { return json::array({jnum(v.real()), jnum(v.imag())}); }

std::string poly_text(const ComplexPoly& p) {
  bool real = true;
  for (const auto& c : p.coeffs()) real = real && c.imag() == 0.0;
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ", ";
    s += real ? num(p.coeffs()[i].real()) : "[" + num(p.coeffs()[i].real()) + ", " +
                                                 num(p.coeffs()[i].imag()) + "]";
  }
  if (p.coeffs().empty()) s += "0";
  return s + "]";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_text(const std::map<std::string, double>& m) {
  std::string s;
  for (const auto& [k, v] : m) {
    if (!s.empty()) s += ';';
    s += k + "=" + num(v);
  }
  return s;
}

void write_reports(std::ostream& out, const std::vector<CheckReport>& reports,
                   const std::string& format, bool header) {
  if (format == "csv" && header) out << "name,params,lhs,rhs,margin,quad_err,passed\r\n";
  for (const auto& r : reports) {
    if (format == "csv") {
      out << csv_quote(r.name) << ',' << csv_quote(params_text(r.params)) << ',' << num(r.lhs)
          << ',' << num(r.rhs) << ',' << num(r.margin) << ',' << num(r.quad_err) << ','
          << (r.passed ? "true" : "false") << "\r\n";
    } else if (format == "text") {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << params_text(r.params)
          << "] lhs=" << num(r.lhs) << " rhs=" << num(r.rhs) << " margin=" << num(r.margin)
          << " quad_err=" << num(r.quad_err) << '\n';
    } else {
      out << r.to_json() << '\n';
    }
  }
}

// ---- eval ----

int cmd_eval(const RunConfig& c, const std::string& fn, unsigned n, const std::string& zs,
             double alpha, double x, double t, int parity, std::ostream& out) {
  json j;
  j["function"] = fn;
  std::string text;
  if (fn == "gamma_mu") {
    const double v = gamma_mu(c.params, n);
    j["n"] = n;
    j["value"] = jnum(v);
    j["error"] = 0.0;
    text = num(v);
  } else if (fn == "e_mu") {
    const cplx z = parse_complex(zs);
    const cplx v = e_mu(c.params, z);
    const double err = std::abs(v - e_mu_series(c.params, z));
    j["z"] = jcplx(z);
    j["value"] = jcplx(v);
    j["error"] = jnum(err);
    text = num(v);
  } else if (fn == "hermite_mu") {
    const ComplexPoly h = hermite_mu(c.params, n);
    j["n"] = n;
    j["coefficients"] = json::parse(to_json(h));
    text = poly_text(h);
  } else if (fn == "macdonald_k") {
    const double v = macdonald_k(alpha, x);
    const double err = std::abs(v - macdonald_k_oracle(alpha, x));
    j["alpha"] = alpha;
    j["x"] = x;
    j["value"] = jnum(v);
    j["error"] = jnum(err);
    text = num(v);
  } else if (fn == "nu_density") {
    if (parity != 1 && parity != -1) throw DomainError("parity must be 1 or -1");
    const cplx z = parse_complex(zs);
    const double v = nu_density(c.params, z, parity == 1 ? Parity::even : Parity::odd);
    j["z"] = jcplx(z);
    j["parity"] = parity;
    j["value"] = jnum(v);
    j["error"] = 0.0;
    text = num(v);
  } else {
    const double v = ground_state_density(c.params, t);
    j["t"] = t;
    j["value"] = jnum(v);
    j["error"] = 0.0;
    text = num(v);
  }
  const std::string fmt = c.format.empty() ? "text" : c.format;
  if (fmt == "json") {
    out << j.dump() << '\n';
  } else if (fmt == "csv") {
    out << "function,value,error\r\n"
        << fn << ',' << csv_quote(text) << ',' << (j.contains("error") ? j["error"].dump() : "0")
        << "\r\n";
  } else {
    out << text << '\n';
  }
  return pass;
}

// ---- transform ----

int cmd_transform(const RunConfig& c, const std::string& poly, const std::vector<std::string>& at,
                  std::ostream& out) {
  const ComplexPoly f = poly_from_json(poly);
  const ComplexPoly img = apply_B_poly(c.params, f);
  const std::string fmt = c.format.empty() ? "text" : c.format;
  json j;
  j["image"] = json::parse(to_json(img));
  json vals = json::array();
  std::vector<std::tuple<cplx, cplx, cplx, double>> rows;
  for (const auto& s : at) {
    const cplx z = parse_complex(s);
    const cplx closed = img(z);
    const auto q = apply_B_quadrature(c.params, f, z, c.quadrature);
    rows.emplace_back(z, closed, q.value, q.error);
    json v;
    v["z"] = jcplx(z);
    v["closed"] = jcplx(closed);
    v["quadrature"] = jcplx(q.value);
    v["residual"] = jnum(std::abs(closed - q.value));
    v["quad_err"] = jnum(q.error);
    vals.push_back(v);
  }
  if (!at.empty()) j["values"] = vals;
  if (fmt == "json") {
    out << j.dump() << '\n';
  } else if (fmt == "csv") {
    out << "re_z,im_z,re_closed,im_closed,re_quad,im_quad,residual\r\n";
    for (const auto& [z, cl, qv, e] : rows)
      out << num(z.real()) << ',' << num(z.imag()) << ',' << num(cl.real()) << ','
          << num(cl.imag()) << ',' << num(qv.real()) << ',' << num(qv.imag()) << ','
          << num(std::abs(cl - qv)) << "\r\n";
  } else {
    out << poly_text(img) << '\n';
    for (const auto& [z, cl, qv, e] : rows)
      out << "z=" << num(z) << " closed=" << num(cl) << " quadrature=" << num(qv)
          << " residual=" << num(std::abs(cl - qv)) << '\n';
  }
  return pass;
}

// ---- region ----

int cmd_region(const RunConfig& c, int n, std::ostream& out) {
  const double lam = c.params.lambda;
  const std::string fmt = c.format.empty() ? "csv" : c.format;
  if (fmt == "json") {
    json a = json::array();
    for (const auto& r : region_boundary(lam, n))
      a.push_back({{"p_inv", r.p_inv}, {"q_inv_boundary", r.q_inv_boundary},
                   {"q_inv_cut", r.q_inv_cut}});
    out << a.dump() << '\n';
  } else {
    out << region_boundary_csv(lam, n);
  }
  return pass;
}

// ---- verify ----

class Suites {
 public:
  explicit Suites(const RunConfig& c) : c_(c) {}

  std::vector<CheckReport> run(const std::string& suite) {
    if (suite == "lemma21") return lemma21();
    if (suite == "eq33") return eq33();
    if (suite == "masses") return masses();
    if (suite == "unitarity") return unitarity();
    if (suite == "hy") return hy();
    if (suite == "hirschman") return hirschman();
    if (suite == "weighted_hy") return weighted_hy();
    if (suite == "lsi") return lsi();
    if (suite == "derivative") return derivative();
    throw DomainError("unknown suite: " + suite);
  }

 private:
  const HTResult& bound(double lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end())
      it = cache_
               .emplace(lambda, hille_tamarkin_norm(c_.params.with_lambda(lambda), c_.p, c_.q,
                                                    c_.quadrature))
               .first;
    return it->second;
  }

  std::vector<CheckReport> lemma21() {
    const cplx zs[] = {{0.3, 0.4}, {-1.2, 0.5}, {2.0, -1.0}, {0.5, 2.5},
                       {-2.0, -2.0}, {1.5, 0.0}, {0.0, -0.7}, {2.8, 0.3}};
    std::vector<CheckReport> r;
    for (cplx z : zs) r.push_back(check_lemma_2_1(c_.params, z, c_.q));
    return r;
  }

  std::vector<CheckReport> eq33() {
    const double pp = conjugate_index(c_.p);
    if (is_inf(pp)) throw DomainError("eq33 needs p > 1");
    std::vector<CheckReport> r;
    for (double x : {0.0, 0.5, 1.0, 1.5}) r.push_back(check_eq_3_3(c_.params, pp, x, c_.quadrature));
    return r;
  }

  std::vector<CheckReport> masses() {
    return {check_parity_mass(c_.params, Parity::even, c_.quadrature),
            check_parity_mass(c_.params, Parity::odd, c_.quadrature)};
  }

  std::vector<CheckReport> unitarity() {
    const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
    const std::vector<std::vector<cplx>> vecs{
        {1.0}, {0.0, 1.0}, {r2, 0.0, r2}, {r3, cplx(0.0, r3), 0.0, r3}};
    std::vector<CheckReport> r;
    for (const auto& v : vecs)
      r.push_back(check_unitarity_lambda(c_.params, FockCoeffs{BasisTag::xi, v, c_.params}));
    return r;
  }

  std::vector<CheckReport> hy() {
    std::optional<HTResult> a;
    if (c_.s > 0.0) a = bound(1.0);
    std::vector<CheckReport> r;
    for (const auto& f : default_family(c_.params))
      r.push_back(check_hausdorff_young(c_.params, c_.p, c_.q, c_.s, f, c_.quadrature, a));
    return r;
  }

  std::vector<CheckReport> hirschman() {
    const HTResult a = bound(1.0);
    std::vector<CheckReport> r;
    for (const auto& f : default_family(c_.params))
      r.push_back(check_hirschman(c_.params, c_.p, c_.q, f, c_.quadrature, a));
    return r;
  }

  std::vector<CheckReport> weighted_hy() {
    std::optional<HTResult> a;
    if (c_.s > 0.0) a = bound(c_.params.lambda);
    std::vector<CheckReport> r;
    for (const auto& f : default_family(c_.params))
      r.push_back(check_weighted_hy(c_.params, c_.p, c_.q, c_.s, f, c_.quadrature, a));
    return r;
  }

  std::vector<CheckReport> lsi() {
    const HTResult a = bound(c_.params.lambda);
    std::vector<CheckReport> r;
    for (const auto& f : default_family(c_.params))
      r.push_back(check_log_sobolev(c_.params, c_.p, c_.q, f, c_.quadrature, a));
    return r;
  }

  std::vector<CheckReport> derivative() {
    const std::vector<ComplexPoly> fs{ComplexPoly{0.0, 1.0}, ComplexPoly{0.0, 0.0, 1.0},
                                      ComplexPoly{1.0, 0.0, 0.0, 1.0}};
    std::vector<CheckReport> r;
    for (const auto& f : fs)
      for (double th : {1.5, 3.0, 4.0})
        for (Space sp : {Space::line, Space::plane})
          r.push_back(entropy_derivative_check(c_.params, f, th, sp, c_.quadrature));
    return r;
  }

  const RunConfig& c_;
  std::map<double, HTResult> cache_;
};

const std::vector<std::string> kSuites{"lemma21", "eq33",        "masses", "unitarity", "hy",
                                       "hirschman", "weighted_hy", "lsi",    "derivative"};

int error_code(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const DomainError&) {
    return domain;
  } catch (const ToleranceNotMet&) {
    return tolerance;
  } catch (const NonConvergent&) {
    return tolerance;
  } catch (const OverflowError&) {
    return tolerance;
  } catch (...) {
    return tolerance;
  }
}

std::string error_message(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

struct SuiteOutcome {
  std::vector<CheckReport> reports;
  int code = pass;
  std::string error;
};

SuiteOutcome run_suites(const RunConfig& c, const std::string& suite) {
  SuiteOutcome out;
  Suites s(c);
  const std::vector<std::string> names = suite == "all" ? kSuites : std::vector<std::string>{suite};
  for (const auto& n : names) {
    try {
      auto r = s.run(n);
      out.reports.insert(out.reports.end(), r.begin(), r.end());
    } catch (...) {
      const auto e = std::current_exception();
      out.code = std::max(out.code, error_code(e));
      if (!out.error.empty()) out.error += "; ";
      out.error += n + ": " + error_message(e);
    }
  }
  for (const auto& r : out.reports)
    if (!r.passed) out.code = std::max<int>(out.code, fail);
  return out;
}

void summarize(std::ostream& err, const std::string& label, const SuiteOutcome& o) {
  const auto passed = std::count_if(o.reports.begin(), o.reports.end(),
                                    [](const CheckReport& r) { return r.passed; });
  err << label << ": " << o.reports.size() << " reports, " << passed << " passed, "
      << (o.reports.size() - passed) << " failed";
  if (!o.error.empty()) err << "; errors: " << o.error;
  err << '\n';
}

int cmd_verify(const RunConfig& c, const std::string& suite, std::ostream& out,
               std::ostream& err) {
  const SuiteOutcome o = run_suites(c, suite);
  write_reports(out, o.reports, c.format.empty() ? "json" : c.format, true);
  summarize(err, "verify " + suite, o);
  return o.code;
}

// ---- sweep ----

int cmd_sweep(const RunConfig& base, const std::string& suite, std::vector<double> mus,
              std::vector<double> lambdas, const std::vector<std::string>& ps,
              const std::vector<std::string>& qs, int jobs, std::ostream& out, std::ostream& err) {
  if (mus.empty()) mus = {base.params.mu};
  if (lambdas.empty()) lambdas = {base.params.lambda};
  std::vector<double> pv, qv;
  for (const auto& s : ps) pv.push_back(parse_index(s));
  for (const auto& s : qs) qv.push_back(parse_index(s));
  if (pv.empty()) pv = {base.p};
  if (qv.empty()) qv = {base.q};
  using Key = std::tuple<double, double, double, double>;
  std::vector<Key> keys;
  for (double m : mus)
    for (double l : lambdas)
      for (double p : pv)
        for (double q : qv) keys.emplace_back(m, l, p, q);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<RunConfig> cfgs;
  for (const auto& [m, l, p, q] : keys) {
    RunConfig c = base;
    c.params = DeformParams(m, l);
    c.p = p;
    c.q = q;
    cfgs.push_back(c);
  }
  std::vector<SuiteOutcome> results(cfgs.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < cfgs.size(); start += width) {
    std::vector<std::future<SuiteOutcome>> futs;
    const std::size_t end = std::min(cfgs.size(), start + width);
    for (std::size_t i = start; i < end; ++i)
      futs.push_back(std::async(std::launch::async, [&, i] { return run_suites(cfgs[i], suite); }));
    for (std::size_t i = start; i < end; ++i) results[i] = futs[i - start].get();
  }
  int code = pass;
  const std::string fmt = base.format.empty() ? "json" : base.format;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    write_reports(out, results[i].reports, fmt, i == 0);
    const auto& [m, l, p, q] = keys[i];
    summarize(err, "sweep " + suite + " mu=" + num(m) + " lambda=" + num(l) + " p=" + num(p) +
                       " q=" + num(q),
              results[i]);
    code = std::max(code, results[i].code);
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for the mu-deformed Segal-Bargmann transform", "musb"};
  app.footer(kFooter);
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flags from a key=value file");
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  RunConfig c;
  double mu = 0.5, lambda = 1.0;
  std::string p_str = "4", q_str = "1";
  double tol = c.quadrature.abs_tol;
  app.add_option("--mu", mu, "Deformation parameter mu >= 0")->envname("MUSB_MU")->capture_default_str();
  app.add_option("--lambda", lambda, "Weight lambda > 0")->envname("MUSB_LAMBDA")->capture_default_str();
  app.add_option("--p", p_str, "Source index p (inf allowed)")->envname("MUSB_P")->capture_default_str();
  app.add_option("--q", q_str, "Target index q")->envname("MUSB_Q")->capture_default_str();
  app.add_option("--s", c.s, "Interpolation parameter s in [0,1]")->envname("MUSB_S")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Absolute quadrature tolerance (relative is 10x)")
                      ->envname("MUSB_TOL");
  app.add_option("--rmax", c.quadrature.r_max, "Radial truncation")->envname("MUSB_RMAX")->capture_default_str();
  app.add_option("--tmax", c.quadrature.t_max, "Line truncation")->envname("MUSB_TMAX")->capture_default_str();
  app.add_option("--angular", c.quadrature.n_angular, "Initial angular nodes")->envname("MUSB_ANGULAR")->capture_default_str();
  app.add_option("--out", c.output_path, "Write output to this file")->envname("MUSB_OUT");
  app.add_option("--format", c.format, "Output format")
      ->envname("MUSB_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  auto* eval = app.add_subcommand("eval", "Evaluate a special function");
  std::string fn;
  unsigned n = 0;
  std::string z = "0";
  double alpha = 0.0, x = 1.0, t = 0.0;
  int parity = 1;
  eval->add_option("function", fn, "Function name")
      ->required()
      ->check(CLI::IsMember({"gamma_mu", "e_mu", "hermite_mu", "macdonald_k", "nu_density",
                             "ground_state_density"}));
  eval->add_option("--n", n, "Integer order");
  eval->add_option("--z", z, "Complex argument re or re,im");
  eval->add_option("--alpha", alpha, "Macdonald order");
  eval->add_option("--x", x, "Macdonald argument");
  eval->add_option("--t", t, "Real argument");
  eval->add_option("--parity", parity, "Parity sheet, 1 or -1");

  auto* transform = app.add_subcommand("transform", "Apply B_mu to a polynomial");
  std::string poly;
  std::vector<std::string> at;
  transform->add_option("poly", poly, "Coefficient JSON, e.g. [0,1] or [[0,1],[1,0]]")->required();
  transform->add_option("--at", at, "Evaluation point re,im (repeatable)");

  auto* region = app.add_subcommand("region", "Boundary of the admissible (1/p, 1/q) region");
  int samples = 101;
  region->add_option("--n", samples, "Number of samples")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::vector<std::string> names = kSuites;
  names.push_back("all");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(names));

  auto* sweep = app.add_subcommand("sweep", "Run a suite over a parameter grid");
  std::string sweep_suite = "hirschman";
  std::vector<double> mus, lambdas;
  std::vector<std::string> ps, qs;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--suite", sweep_suite, "Suite name")->check(CLI::IsMember(names))->capture_default_str();
  sweep->add_option("--mus", mus, "mu values");
  sweep->add_option("--lambdas", lambdas, "lambda values");
  sweep->add_option("--ps", ps, "p values");
  sweep->add_option("--qs", qs, "q values");
  sweep->add_option("--jobs", jobs, "Concurrent parameter tuples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? pass : domain;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
  try {
    c.params = DeformParams(mu, lambda);
    c.p = parse_index(p_str);
    c.q = parse_index(q_str);
    if (*tol_opt) {
      c.quadrature.abs_tol = tol;
      c.quadrature.rel_tol = 10.0 * tol;
    }
    c.quadrature.validate();
    if (!c.output_path.empty()) {
      file.open(c.output_path, std::ios::binary);
      if (!file) throw DomainError("cannot open output file " + c.output_path);
      sink = &file;
    }
    if (*eval) return cmd_eval(c, fn, n, z, alpha, x, t, parity, *sink);
    if (*transform) return cmd_transform(c, poly, at, *sink);
    if (*region) return cmd_region(c, samples, *sink);
    if (*verify) return cmd_verify(c, suite, *sink, err);
    if (*sweep) return cmd_sweep(c, sweep_suite, mus, lambdas, ps, qs, jobs, *sink, err);
  } catch (...) {
    const auto e = std::current_exception();
    err << "error: " << error_message(e) << '\n';
    return error_code(e);
  }
  return domain;
}

}  // namespace musb::cli
