#include "musb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "musb/errors.hpp"

namespace musb {
namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  int depth;
  long id;
};

template <class T>
void kronrod15(const std::function<T(double)>& f, Panel<T>& p) {
  const double c = 0.5 * (p.a + p.b);
  const double h = 0.5 * (p.b - p.a);
  const T fc = f(c);
  T resk = fc * kWgk[7];
  T resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    resk += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) resg += (f1 + f2) * kWg[j / 2];
  }
  p.value = resk * h;
  p.error = std::abs((resk - resg) * h);
  if (!std::isfinite(p.error)) p.error = std::numeric_limits<double>::infinity();
}

template <class T>
struct Accum;

template <>
struct Accum<double> {
  KahanSum s;
  void add(double v) { s.add(v); }
  double value() const { return s.value(); }
};

template <>
struct Accum<std::complex<double>> {
  KahanSum re, im;
  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

template <class T>
QuadResult<T> gk_adaptive(const std::function<T(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
  QuadResult<T> out;
  if (a == b) return out;
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("gauss_kronrod: infinite limits");

  std::vector<Panel<T>> panels;
  panels.reserve(64);
  auto worse = [&panels](int i, int j) {
    if (panels[i].error != panels[j].error) return panels[i].error < panels[j].error;
    return panels[i].id > panels[j].id;
  };
  std::priority_queue<int, std::vector<int>, decltype(worse)> heap(worse);
  long next_id = 0;

  Panel<T> root{a, b, T{}, 0.0, 0, next_id++};
  kronrod15(f, root);
  out.evaluations = 15;
  panels.push_back(root);
  heap.push(0);

  T total = root.value;
  double total_err = root.error;
  std::vector<int> frozen;
  int iterations = 0;

  while (true) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    if (heap.empty()) {
      out.converged = false;
      break;
    }
    const int w = heap.top();
    heap.pop();
    if (panels[w].depth >= opt.max_depth ||
        static_cast<int>(panels.size()) + 1 >= opt.max_intervals) {
      frozen.push_back(w);
      continue;
    }
    const Panel<T> parent = panels[w];
    const double mid = 0.5 * (parent.a + parent.b);
    Panel<T> left{parent.a, mid, T{}, 0.0, parent.depth + 1, next_id++};
    Panel<T> right{mid, parent.b, T{}, 0.0, parent.depth + 1, next_id++};
    kronrod15(f, left);
    kronrod15(f, right);
    out.evaluations += 30;
    panels[w] = left;
    panels.push_back(right);
    heap.push(w);
    heap.push(static_cast<int>(panels.size()) - 1);

    if (++iterations % 64 == 0) {
      Accum<T> acc;
      KahanSum err;
      for (const auto& p : panels) {
        acc.add(p.value);
        err.add(p.error);
      }
      total = acc.value();
      total_err = err.value();
    } else {
      total += left.value + right.value - parent.value;
      total_err += left.error + right.error - parent.error;
    }
  }

  std::vector<int> order(panels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return panels[i].a < panels[j].a; });
  Accum<T> acc;
  KahanSum err;
  for (int i : order) {
    acc.add(panels[i].value);
    err.add(panels[i].error);
  }
  out.value = acc.value();
  out.error = err.value();
  if (!std::isfinite(out.error)) out.converged = false;
  if (out.error > std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value))) out.converged = false;
  return out;
}

}  // namespace

QuadResult<double> gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                 const AdaptiveOptions& opt) {
  return gk_adaptive<double>(f, a, b, opt);
}

QuadResult<std::complex<double>> gauss_kronrod(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& opt) {
  return gk_adaptive<std::complex<double>>(f, a, b, opt);
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

GaussRule composite_rule(const std::vector<double>& edges, const GaussRule& rule) {
  GaussRule out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double c = 0.5 * (edges[i] + edges[i + 1]);
    const double h = 0.5 * (edges[i + 1] - edges[i]);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      out.nodes.push_back(c + h * rule.nodes[k]);
      out.weights.push_back(h * rule.weights[k]);
    }
  }
  return out;
}

std::vector<double> graded_edges(double h, int levels, double step, double end) {
  std::vector<double> e{0.0};
  for (int k = levels; k >= 1; --k) e.push_back(std::ldexp(h, -k));
  e.push_back(h);
  if (end > h) {
    const int n = std::max(1, static_cast<int>(std::ceil((end - h) / step - 1e-12)));
    const double d = (end - h) / n;
    for (int k = 1; k <= n; ++k) e.push_back(h + d * k);
  }
  return e;
}

}  // namespace musb
