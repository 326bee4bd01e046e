#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "fuglede/error.hpp"

namespace fuglede {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "64-bit multiplication overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "64-bit addition overflow");
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// p-adic valuation of n (n > 0).
inline int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r = checked_mul(r, b);
  return r;
}

/// Number of k-subsets of an n-set, saturating at INT64_MAX.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) return INT64_MAX;
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace fuglede
