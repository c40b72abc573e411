#include "musb/poly.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "musb/errors.hpp"

namespace musb {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

ComplexPoly ComplexPoly::monomial(std::size_t n, cplx c) {
  std::vector<cplx> v(n + 1, cplx{});
  v[n] = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly(std::vector<cplx>{c}); }

void ComplexPoly::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::conj() const {
  std::vector<cplx> d(c_);
  for (auto& v : d) v = std::conj(v);
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::scaled_argument(cplx a) const {
  std::vector<cplx> d(c_);
  cplx p = 1.0;
  for (auto& v : d) {
    v *= p;
    p *= a;
  }
  return ComplexPoly(std::move(d));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> d(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return ComplexPoly(std::move(d));
}

double max_coeff_diff(const ComplexPoly& a, const ComplexPoly& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
  return m;
}

std::string to_json(const ComplexPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr.dump();
}

ComplexPoly poly_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("polynomial JSON: ") + e.what());
  }
  if (!j.is_array()) throw DomainError("polynomial JSON must be an array");
  std::vector<cplx> c;
  c.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw DomainError("polynomial JSON entries must be numbers or [re, im] pairs");
    }
  }
  return ComplexPoly(std::move(c));
}

}  // namespace musb
