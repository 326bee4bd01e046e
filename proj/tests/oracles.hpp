#pragma once

// Slow reference implementations used as test oracles. Nothing here calls
// into the library's arithmetic: elements are plain coordinate vectors,
// character sums are floating point, polynomials are int64 vectors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Coords = std::vector<std::int64_t>;
using Poly = std::vector<std::int64_t>;  // ascending degree

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Quotient of exact division a / b (b monic); asserts remainder zero via the
/// returned flag.
inline Poly divide_exact(Poly a, const Poly& b, bool& exact) {
  trim(a);
  const auto db = static_cast<std::ptrdiff_t>(b.size()) - 1;
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (auto i = static_cast<std::ptrdiff_t>(a.size()) - 1; i >= db; --i) {
    const auto c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (std::ptrdiff_t j = 0; j <= db; ++j) a[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(a);
  exact = a.empty();
  trim(q);
  return q;
}

/// Phi_n by dividing x^n - 1 by Phi_d for every proper divisor d.
inline Poly cyclotomic_by_division(std::int64_t n, std::vector<Poly>& memo) {
  if (memo.size() <= static_cast<std::size_t>(n)) memo.resize(static_cast<std::size_t>(n) + 1);
  if (!memo[static_cast<std::size_t>(n)].empty()) return memo[static_cast<std::size_t>(n)];
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool exact = false;
    p = divide_exact(p, cyclotomic_by_division(d, memo), exact);
    if (!exact) return {};
  }
  memo[static_cast<std::size_t>(n)] = p;
  return p;
}

struct Group {
  std::vector<std::int64_t> moduli;

  std::int64_t order() const {
    std::int64_t n = 1;
    for (auto m : moduli) n *= m;
    return n;
  }
  std::int64_t exponent() const {
    std::int64_t e = 1;
    for (auto m : moduli) e = std::lcm(e, m);
    return e;
  }
  /// Every element, last coordinate fastest.
  std::vector<Coords> elements() const {
    std::vector<Coords> out{Coords(moduli.size(), 0)};
    for (std::size_t i = moduli.size(); i-- > 0;) {
      std::vector<Coords> next;
      for (std::int64_t v = 0; v < moduli[i]; ++v)
        for (auto c : out) {
          c[i] = v;
          next.push_back(c);
        }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  Coords add(const Coords& a, const Coords& b) const {
    Coords r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % moduli[i];
    return r;
  }
  Coords sub(const Coords& a, const Coords& b) const {
    Coords r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ((a[i] - b[i]) % moduli[i] + moduli[i]) % moduli[i];
    return r;
  }
  bool is_zero(const Coords& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
  }
  /// Character value exp(2 pi i sum x_i y_i / n_i).
  std::complex<double> chi(const Coords& x, const Coords& y) const {
    double phase = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      phase += static_cast<double>((x[i] * y[i]) % moduli[i]) / static_cast<double>(moduli[i]);
    return std::polar(1.0, 2 * M_PI * phase);
  }
};

inline std::complex<double> char_sum(const Group& g, const std::vector<Coords>& set, const std::vector<std::int64_t>& mult,
                                     const Coords& y) {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < set.size(); ++i) s += static_cast<double>(mult.empty() ? 1 : mult[i]) * g.chi(set[i], y);
  return s;
}

inline bool vanishes(const Group& g, const std::vector<Coords>& set, const Coords& y,
                     const std::vector<std::int64_t>& mult = {}) {
  return std::abs(char_sum(g, set, mult, y)) < 1e-6;
}

inline bool is_tiling_pair(const Group& g, const std::vector<Coords>& s, const std::vector<Coords>& t) {
  if (static_cast<std::int64_t>(s.size() * t.size()) != g.order()) return false;
  std::set<Coords> seen;
  for (const auto& a : s)
    for (const auto& b : t)
      if (!seen.insert(g.add(a, b)).second) return false;
  return true;
}

inline bool is_spectral_pair(const Group& g, const std::vector<Coords>& s, const std::vector<Coords>& l) {
  if (s.size() != l.size()) return false;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j)
      if (!vanishes(g, s, g.sub(l[i], l[j]))) return false;
  return true;
}

/// Calls f on every k-subset of `pool` containing pool[0]; stops when f returns true.
template <class F>
bool any_subset_with_first(const std::vector<Coords>& pool, std::size_t k, F&& f) {
  if (k == 0 || k > pool.size()) return false;
  std::vector<std::size_t> idx(k - 1);
  std::iota(idx.begin(), idx.end(), 1);
  std::vector<Coords> cur(k);
  while (true) {
    cur[0] = pool[0];
    for (std::size_t i = 0; i + 1 < k; ++i) cur[i + 1] = pool[idx[i]];
    if (f(cur)) return true;
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] == pool.size() - idx.size() + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool brute_spectral(const Group& g, const std::vector<Coords>& s) {
  const auto all = g.elements();
  return any_subset_with_first(all, s.size(), [&](const std::vector<Coords>& l) { return is_spectral_pair(g, s, l); });
}

inline bool brute_tile(const Group& g, const std::vector<Coords>& s) {
  if (s.empty() || g.order() % static_cast<std::int64_t>(s.size()) != 0) return false;
  const auto all = g.elements();
  return any_subset_with_first(all, static_cast<std::size_t>(g.order()) / s.size(),
                               [&](const std::vector<Coords>& t) { return is_tiling_pair(g, s, t); });
}

}  // namespace oracle
