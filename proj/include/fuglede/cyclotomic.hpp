#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuglede/group.hpp"
#include "fuglede/polynomial.hpp"

namespace fuglede {

/// Element of Z[zeta_M] in the power basis 1, zeta, ..., zeta^{phi(M)-1}.
/// The coefficient vector is the remainder modulo Phi_M, so equality of
/// values is equality of coefficients.
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  CyclotomicInt(std::int64_t modulus, std::vector<std::int64_t> coeffs)
      : modulus_(modulus), coeffs_(std::move(coeffs)) {}

  std::int64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept {
    for (auto c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(coeffs_[i]);
      if (i) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;

 private:
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> coeffs_;
};

/// Reduction of exponent histograms sum_k h_k x^k (k < M) modulo Phi_M via a
/// table of the remainders x^k mod Phi_M.
class CyclotomicReducer {
 public:
  explicit CyclotomicReducer(std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 1) fail(Errc::InvalidArgument, "modulus must be >= 1");
    const IntPolynomial& phi = cyclotomic_poly(modulus);
    degree_ = static_cast<std::size_t>(phi.degree());
    const auto m = static_cast<std::size_t>(modulus);
    table_.assign(m * degree_, 0);
    std::vector<mpz_class> cur(degree_, 0);
    cur[0] = 1;  // x^0
    for (std::size_t k = 0; k < m; ++k) {
      if (k > 0) {
        // cur <- x * cur mod Phi (Phi is monic of degree phi(M)).
        mpz_class top = cur[degree_ - 1];
        for (std::size_t j = degree_; j-- > 1;) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (std::size_t j = 0; j < degree_; ++j) cur[j] -= top * phi[j];
      }
      for (std::size_t j = 0; j < degree_; ++j) {
        if (!cur[j].fits_slong_p()) fail(Errc::Overflow, "cyclotomic remainder table exceeds 64 bits");
        table_[k * degree_ + j] = cur[j].get_si();
      }
    }
  }

  std::int64_t modulus() const noexcept { return modulus_; }
  std::size_t degree() const noexcept { return degree_; }

  /// Remainder of x^k modulo Phi_M.
  std::span<const std::int64_t> power(std::size_t k) const {
    return {table_.data() + k * degree_, degree_};
  }

  CyclotomicInt reduce(std::span<const Count> hist) const {
    std::vector<__int128> acc(degree_, 0);
    accumulate(hist, acc);
    std::vector<std::int64_t> out(degree_);
    for (std::size_t j = 0; j < degree_; ++j) {
      if (acc[j] > INT64_MAX || acc[j] < INT64_MIN) fail(Errc::Overflow, "character sum exceeds 64 bits");
      out[j] = static_cast<std::int64_t>(acc[j]);
    }
    return CyclotomicInt(modulus_, std::move(out));
  }

  bool vanishes(std::span<const Count> hist) const {
    thread_local std::vector<__int128> acc;
    acc.assign(degree_, 0);
    accumulate(hist, acc);
    for (auto v : acc)
      if (v != 0) return false;
    return true;
  }

 private:
  void accumulate(std::span<const Count> hist, std::vector<__int128>& acc) const {
    for (std::size_t k = 0; k < hist.size(); ++k) {
      const Count h = hist[k];
      if (h == 0) continue;
      if (k < degree_) {
        acc[k] += h;
        continue;
      }
      const std::int64_t* row = table_.data() + k * degree_;
      for (std::size_t j = 0; j < degree_; ++j) acc[j] += static_cast<__int128>(h) * row[j];
    }
  }

  std::int64_t modulus_;
  std::size_t degree_ = 0;
  std::vector<std::int64_t> table_;
};

inline const CyclotomicReducer& reducer_for(std::int64_t modulus) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<CyclotomicReducer>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[modulus];
  if (!slot) slot = std::make_unique<CyclotomicReducer>(modulus);
  return *slot;
}

/// Nonzero g with chi_g(S) = 0, as sorted indices.
class ZeroSet {
 public:
  ZeroSet() = default;
  ZeroSet(Group g, std::vector<Index> members) : group_(std::move(g)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
  }

  const Group& group() const noexcept { return group_; }
  const std::vector<Index>& indices() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Index i) const { return std::binary_search(members_.begin(), members_.end(), i); }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (auto i : members_) out.push_back(group_.element_at(i));
    return out;
  }
  Bitset bits() const {
    Bitset b(static_cast<std::size_t>(group_.order()));
    for (auto i : members_) b.set(static_cast<std::size_t>(i));
    return b;
  }

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;

 private:
  Group group_;
  std::vector<Index> members_;
};

/// Character sums of one group: pairs the group tables with the reducer for
/// its exponent and a dot-product table for small groups.
class FourierEngine {
 public:
  explicit FourierEngine(const Group& g)
      : tables_(&tables_for(g)), reducer_(&reducer_for(g.exponent())) {
    const auto n = tables_->size();
    if (n <= kDotTableLimit) {
      dot_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          dot_[a * n + b] = static_cast<std::int32_t>(g.dot(static_cast<Index>(a), static_cast<Index>(b)));
    }
  }

  const Group& group() const noexcept { return tables_->group(); }
  const GroupTables& tables() const noexcept { return *tables_; }
  const CyclotomicReducer& reducer() const noexcept { return *reducer_; }

  std::int64_t dot(Index a, Index b) const noexcept {
    if (!dot_.empty()) return dot_[static_cast<std::size_t>(a) * tables_->size() + static_cast<std::size_t>(b)];
    return group().dot(a, b);
  }

  bool vanishes(std::span<const Index> set, Index g) const {
    auto& hist = histogram();
    for (auto x : set) ++hist[static_cast<std::size_t>(dot(x, g))];
    return reducer_->vanishes(hist);
  }

  bool vanishes(const Multiset& a, Index g) const {
    auto& hist = histogram();
    for (const auto& [x, c] : a) hist[static_cast<std::size_t>(dot(x, g))] += c;
    return reducer_->vanishes(hist);
  }

  CyclotomicInt char_sum(const Multiset& a, Index g) const {
    auto& hist = histogram();
    for (const auto& [x, c] : a) hist[static_cast<std::size_t>(dot(x, g))] += c;
    return reducer_->reduce(hist);
  }

  /// Zero set of a set, testing one representative per direction class.
  Bitset zero_set(std::span<const Index> set) const {
    Bitset z(tables_->size());
    const auto& classes = tables_->direction_classes();
    for (std::size_t c = 1; c < classes.size(); ++c) {
      if (!vanishes(set, classes[c].front())) continue;
      for (auto m : classes[c]) z.set(static_cast<std::size_t>(m));
    }
    return z;
  }

 private:
  static constexpr std::size_t kDotTableLimit = 1024;

  std::vector<Count>& histogram() const {
    thread_local std::vector<Count> hist;
    hist.assign(static_cast<std::size_t>(reducer_->modulus()), 0);
    return hist;
  }

  const GroupTables* tables_;
  const CyclotomicReducer* reducer_;
  std::vector<std::int32_t> dot_;
};

inline const FourierEngine& engine_for(const Group& g) {
  static std::mutex mu;
  static std::map<std::vector<std::int64_t>, std::unique_ptr<FourierEngine>> cache;
  std::unique_lock lock(mu);
  auto& slot = cache[g.moduli()];
  if (!slot) slot = std::make_unique<FourierEngine>(g);
  return *slot;
}

/// chi_g(A) = sum_x A(x) zeta_M^{<x,g>}, exactly.
inline CyclotomicInt char_sum(const Group& g, const Multiset& a, const Element& chi) {
  require_same_group(g, a.group());
  const Index gi = g.index_of(chi);
  std::vector<Count> hist(static_cast<std::size_t>(g.exponent()), 0);
  for (const auto& [x, c] : a) hist[static_cast<std::size_t>(g.dot(x, gi))] += c;
  return reducer_for(g.exponent()).reduce(hist);
}

inline bool char_sum_vanishes(const Group& g, const Multiset& a, const Element& chi) {
  require_same_group(g, a.group());
  const Index gi = g.index_of(chi);
  std::vector<Count> hist(static_cast<std::size_t>(g.exponent()), 0);
  for (const auto& [x, c] : a) hist[static_cast<std::size_t>(g.dot(x, gi))] += c;
  return reducer_for(g.exponent()).vanishes(hist);
}

/// Every nonzero g with a vanishing character sum, each tested directly.
inline ZeroSet zero_set(const Group& g, const Multiset& a) {
  require_same_group(g, a.group());
  require_enumerable(g);
  const auto& eng = engine_for(g);
  std::vector<Index> out;
  for (Index y = 1; y < g.order(); ++y)
    if (eng.vanishes(a, y)) out.push_back(y);
  return ZeroSet(g, std::move(out));
}

/// A(i, j) = u_j + v_i on Z_p x Z_q: u_j weights the Z_p-coset {(*, j)} and
/// v_i weights the Z_q-coset {(i, *)}. Canonical form has min u = 0.
struct CubeDecomposition {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<Count> row_coeffs;  // u, indexed by j in Z_q
  std::vector<Count> col_coeffs;  // v, indexed by i in Z_p

  Multiset reconstruct() const {
    Group g({p, q});
    std::vector<Multiset::Entry> e;
    for (std::int64_t i = 0; i < p; ++i)
      for (std::int64_t j = 0; j < q; ++j) {
        const Count c = row_coeffs[static_cast<std::size_t>(j)] + col_coeffs[static_cast<std::size_t>(i)];
        if (c) e.emplace_back(i * q + j, c);
      }
    return Multiset(std::move(g), std::move(e));
  }

  friend bool operator==(const CubeDecomposition&, const CubeDecomposition&) = default;
};

inline std::optional<CubeDecomposition> cube_decompose(const Multiset& a) {
  const auto& m = a.group().moduli();
  if (m.size() != 2 || !is_prime(m[0]) || !is_prime(m[1]) || m[0] == m[1])
    fail(Errc::NotTwoDistinctPrimes, "cube rule needs Z_p x Z_q, got " + a.group().to_string());
  const std::int64_t p = m[0], q = m[1];
  auto at = [&](std::int64_t i, std::int64_t j) { return a[i * q + j]; };
  Count t = at(0, 0);
  for (std::int64_t j = 1; j < q; ++j) t = std::min(t, at(0, j));
  CubeDecomposition d{p, q, std::vector<Count>(static_cast<std::size_t>(q)),
                      std::vector<Count>(static_cast<std::size_t>(p))};
  for (std::int64_t j = 0; j < q; ++j) d.row_coeffs[static_cast<std::size_t>(j)] = at(0, j) - t;
  for (std::int64_t i = 0; i < p; ++i) {
    const Count v = at(i, 0) - at(0, 0) + t;
    if (v < 0) return std::nullopt;
    d.col_coeffs[static_cast<std::size_t>(i)] = v;
  }
  for (std::int64_t i = 0; i < p; ++i)
    for (std::int64_t j = 0; j < q; ++j)
      if (d.row_coeffs[static_cast<std::size_t>(j)] + d.col_coeffs[static_cast<std::size_t>(i)] != at(i, j))
        return std::nullopt;
  return d;
}

}  // namespace fuglede
