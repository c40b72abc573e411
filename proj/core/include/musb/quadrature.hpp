#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace musb {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  bool converged = true;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;
  int max_intervals = 5000;
};

// Globally adaptive 7/15 Gauss-Kronrod quadrature on [a,b].
// Panels are bisected largest-error-first; ties go to the leftmost panel.
QuadResult<double> gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                 const AdaptiveOptions& opt);
QuadResult<std::complex<double>> gauss_kronrod(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveOptions& opt);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1,1].
GaussRule gauss_legendre(int n);

// Composite rule: `rule` mapped onto each panel defined by consecutive edges.
GaussRule composite_rule(const std::vector<double>& edges, const GaussRule& rule);

// Panel edges: 0, then h 2^-levels, ..., h/2, h, then uniform steps of width
// `step` up to `end`.
std::vector<double> graded_edges(double h, int levels, double step, double end);

// Neumaier-compensated sum.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      c_ += (sum_ - t) + v;
    else
      c_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace musb
