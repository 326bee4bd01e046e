#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/error.hpp"
#include "fuglede/numeric.hpp"

namespace fuglede {

/// Dense polynomial over Z with arbitrary-precision coefficients, stored in
/// ascending degree with no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (auto v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial monomial(std::size_t degree, const mpz_class& coeff = 1) {
    std::vector<mpz_class> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
  }

  /// x^n - 1
  static IntPolynomial x_pow_minus_one(std::size_t n) {
    std::vector<mpz_class> c(n + 1, 0);
    c[0] = -1;
    c[n] += 1;
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const noexcept { return c_; }
  const mpz_class& leading() const { return c_.back(); }

  mpz_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }

  /// p(x^k)
  IntPolynomial substitute_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<mpz_class> c(static_cast<std::size_t>(degree()) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  struct DivMod;

  /// Long division by a divisor with leading coefficient +-1.
  static DivMod divmod(const IntPolynomial& num, const IntPolynomial& den);

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      mpz_class v = c_[i];
      if (!s.empty()) s += v < 0 ? " - " : " + ";
      else if (v < 0) s += "-";
      v = abs(v);
      if (v != 1 || i == 0) s += v.get_str();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

struct IntPolynomial::DivMod {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

inline IntPolynomial::DivMod IntPolynomial::divmod(const IntPolynomial& num, const IntPolynomial& den) {
  if (den.is_zero()) fail(Errc::InvalidArgument, "polynomial division by zero");
  if (abs(den.leading()) != 1) fail(Errc::InvalidArgument, "divisor must have unit leading coefficient");
  std::vector<mpz_class> r = num.c_;
  const auto dd = static_cast<std::size_t>(den.degree());
  if (r.size() <= dd) return {IntPolynomial{}, num};
  std::vector<mpz_class> q(r.size() - dd, 0);
  const int lead_sign = den.leading() > 0 ? 1 : -1;
  for (std::size_t k = r.size(); k-- > dd;) {
    if (r[k] == 0) continue;
    mpz_class f = r[k] * lead_sign;
    q[k - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= f * den.c_[j];
  }
  r.resize(dd);
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

/// n-th cyclotomic polynomial. Built as Phi_rad(n)(x^{n/rad(n)}) with
/// Phi_rad from the Moebius product of (x^d - 1)^{mu(rad/d)}; memoized.
inline const IntPolynomial& cyclotomic_poly(std::int64_t n) {
  if (n < 1) fail(Errc::InvalidArgument, "cyclotomic index must be >= 1");
  static std::mutex mu;
  static std::map<std::int64_t, IntPolynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::int64_t rad = 1;
  for (auto [p, e] : factorize(n)) rad *= p;
  IntPolynomial numer{1}, denom{1};
  for (auto d : divisors(rad)) {
    const int m = mobius(rad / d);
    if (m == 1) numer = numer * IntPolynomial::x_pow_minus_one(static_cast<std::size_t>(d));
    if (m == -1) denom = denom * IntPolynomial::x_pow_minus_one(static_cast<std::size_t>(d));
  }
  auto [q, r] = IntPolynomial::divmod(numer, denom);
  if (!r.is_zero()) fail(Errc::InvalidArgument, "inexact cyclotomic quotient");
  IntPolynomial phi = q.substitute_power(static_cast<std::size_t>(n / rad));
  std::lock_guard lock(mu);
  // std::map node addresses are stable, so references handed out stay valid.
  return cache.emplace(n, std::move(phi)).first->second;
}

}  // namespace fuglede
