#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace musb {

using cplx = std::complex<double>;

// Polynomial with complex coefficients, index = degree.
// Trailing zero coefficients are dropped so the zero polynomial is empty.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly monomial(std::size_t n, cplx c = 1.0);
  static ComplexPoly constant(cplx c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(std::size_t n) const { return n < c_.size() ? c_[n] : cplx{}; }

  cplx operator()(cplx z) const;
  cplx operator()(double t) const { return (*this)(cplx(t, 0.0)); }

  ComplexPoly derivative() const;
  ComplexPoly conj() const;
  // f(a z) for complex a.
  ComplexPoly scaled_argument(cplx a) const;

  ComplexPoly& operator+=(const ComplexPoly& o);
  ComplexPoly& operator-=(const ComplexPoly& o);
  ComplexPoly& operator*=(cplx s);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, cplx s) { return a *= s; }
  friend ComplexPoly operator*(cplx s, ComplexPoly a) { return a *= s; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend bool operator==(const ComplexPoly& a, const ComplexPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<cplx> c_;
};

// Largest coefficient-wise absolute difference.
double max_coeff_diff(const ComplexPoly& a, const ComplexPoly& b);

// JSON array of [re, im] pairs, degree ascending.
std::string to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(std::string_view text);

}  // namespace musb
