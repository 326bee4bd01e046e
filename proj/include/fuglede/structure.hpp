#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/tiling.hpp"

namespace fuglede {

/// Z_p^2 x Z_q^2 with p < q. Records which coordinates carry each prime so
/// elements split as x = a + b with a in Z_p^2 and b in Z_q^2.
class PQShape {
 public:
  static std::optional<PQShape> detect(const Group& g) {
    const auto& m = g.moduli();
    if (m.size() != 4) return std::nullopt;
    auto sorted = m;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[0] != sorted[1] || sorted[2] != sorted[3] || sorted[0] == sorted[2]) return std::nullopt;
    if (!is_prime(sorted[0]) || !is_prime(sorted[2])) return std::nullopt;
    PQShape s;
    s.group_ = g;
    s.p_ = sorted[0];
    s.q_ = sorted[2];
    for (std::size_t i = 0; i < 4; ++i) (m[i] == s.p_ ? s.p_coords_ : s.q_coords_).push_back(i);
    s.zp2_ = Group({s.p_, s.p_});
    s.zq2_ = Group({s.q_, s.q_});
    return s;
  }

  static PQShape of(const Group& g) {
    auto s = detect(g);
    if (!s) fail(Errc::NotPQShape, g.to_string() + " is not Z_p^2 x Z_q^2");
    return *s;
  }

  const Group& group() const noexcept { return group_; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  const Group& zp2() const noexcept { return zp2_; }
  const Group& zq2() const noexcept { return zq2_; }
  const std::vector<std::size_t>& p_coords() const noexcept { return p_coords_; }
  const std::vector<std::size_t>& q_coords() const noexcept { return q_coords_; }

  /// Index in Z_p^2 of the p-part of x.
  Index p_part(Index x) const noexcept {
    return group_.coord(x, p_coords_[0]) * p_ + group_.coord(x, p_coords_[1]);
  }
  Index q_part(Index x) const noexcept {
    return group_.coord(x, q_coords_[0]) * q_ + group_.coord(x, q_coords_[1]);
  }
  /// Element of G with p-part a (index in Z_p^2) and q-part b (index in Z_q^2).
  Index compose(Index a, Index b) const {
    Element x = group_.zero();
    x.coords[p_coords_[0]] = a / p_;
    x.coords[p_coords_[1]] = a % p_;
    x.coords[q_coords_[0]] = b / q_;
    x.coords[q_coords_[1]] = b % q_;
    return group_.index_of(x);
  }

  /// Nonzero elements of the Sylow r-subgroup for r in {p, q}.
  std::vector<Index> sylow_nonzero(std::int64_t r) const {
    std::vector<Index> out;
    const std::int64_t side = r == p_ ? p_ * p_ : q_ * q_;
    for (Index i = 1; i < side; ++i) out.push_back(r == p_ ? compose(i, 0) : compose(0, i));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  PQShape() = default;

  Group group_;
  std::int64_t p_ = 0;
  std::int64_t q_ = 0;
  std::vector<std::size_t> p_coords_;
  std::vector<std::size_t> q_coords_;
  Group zp2_;
  Group zq2_;
};

/// gcd(|S|, |G|).
inline std::int64_t divisibility_class(const Group& g, const Multiset& s) {
  require_same_group(g, s.group());
  return std::gcd(s.mass(), g.order());
}

enum class CaseKind { Case1, Case2, Case3, Case4, Case5, Full };

constexpr std::string_view to_string(CaseKind k) {
  switch (k) {
    case CaseKind::Case1: return "Case1";
    case CaseKind::Case2: return "Case2";
    case CaseKind::Case3: return "Case3";
    case CaseKind::Case4: return "Case4";
    case CaseKind::Case5: return "Case5";
    case CaseKind::Full: return "Full";
  }
  return "?";
}

/// Case of the spectral => tile argument. `prime` records orientation: the
/// squared prime for Case1 (r^2 s) and Case2 (r^2), the single prime for
/// Case4, and 0 otherwise.
struct CaseTag {
  CaseKind kind = CaseKind::Case3;
  std::int64_t prime = 0;
  std::int64_t gcd = 1;

  friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

inline CaseTag classify_case(const PQShape& shape, std::int64_t size) {
  if (size < 1) fail(Errc::EmptyInput, "cannot classify an empty set");
  const auto p = shape.p(), q = shape.q();
  const auto n = std::gcd(size, shape.group().order());
  if (n == p * p * q * q) return {CaseKind::Full, 0, n};
  if (n == p * p * q) return {CaseKind::Case1, p, n};
  if (n == p * q * q) return {CaseKind::Case1, q, n};
  if (n == p * p) return {CaseKind::Case2, p, n};
  if (n == q * q) return {CaseKind::Case2, q, n};
  if (n == 1) return {CaseKind::Case3, 0, n};
  if (n == p) return {CaseKind::Case4, p, n};
  if (n == q) return {CaseKind::Case4, q, n};
  return {CaseKind::Case5, 0, n};
}

inline CaseTag classify_case(const PQShape& shape, const Multiset& s) {
  require_same_group(shape.group(), s.group());
  return classify_case(shape, s.mass());
}

/// K_a = ((Z_q^2 + a) ∩ S) - a for every a in Z_p^2 (indexed by a).
struct LeafDecomposition {
  std::vector<Multiset> leaves;

  Multiset reassemble(const PQShape& shape) const {
    std::vector<Multiset::Entry> e;
    for (std::size_t a = 0; a < leaves.size(); ++a)
      for (const auto& [b, c] : leaves[a]) e.emplace_back(shape.compose(static_cast<Index>(a), b), c);
    return Multiset(shape.group(), std::move(e));
  }
};

inline LeafDecomposition leaf_decomposition(const PQShape& shape, const Multiset& s) {
  require_same_group(shape.group(), s.group());
  std::vector<std::vector<Multiset::Entry>> parts(static_cast<std::size_t>(shape.zp2().order()));
  for (const auto& [x, c] : s) parts[static_cast<std::size_t>(shape.p_part(x))].emplace_back(shape.q_part(x), c);
  LeafDecomposition d;
  for (auto& part : parts) d.leaves.emplace_back(shape.zq2(), std::move(part));
  return d;
}

/// S_p = c Z_p^2 + q D with c the minimum of S_p.
struct LeafConstancy {
  Count c = 0;
  Multiset d;
};

inline std::optional<LeafConstancy> leaf_constancy(const PQShape& shape, const Multiset& s) {
  require_same_group(shape.group(), s.group());
  const Multiset sp = sylow_projection(shape.group(), s, shape.p());
  const auto dense = sp.dense();
  const Count c = *std::min_element(dense.begin(), dense.end());
  std::vector<Count> d(dense.size());
  for (std::size_t a = 0; a < dense.size(); ++a) {
    if ((dense[a] - c) % shape.q() != 0) return std::nullopt;
    d[a] = (dense[a] - c) / shape.q();
  }
  return LeafConstancy{c, Multiset::from_dense(shape.zp2(), d)};
}

/// Along every line b + <u> of Z_p^2, nonempty leaves coincide.
inline bool assumption_a_holds(const PQShape& shape, const Multiset& s, const Element& u) {
  require_same_group(shape.group(), s.group());
  if (!shape.zp2().contains(u)) fail(Errc::InvalidDirection, "u must be an element of Z_p^2");
  const Index ui = shape.zp2().index_of(u);
  if (ui == 0) fail(Errc::InvalidDirection, "u must be nonzero");
  const auto leaves = leaf_decomposition(shape, s).leaves;
  const auto& zp2 = shape.zp2();
  for (Index b = 0; b < zp2.order(); ++b) {
    const Multiset* seen = nullptr;
    Index pt = b;
    for (std::int64_t lam = 0; lam < shape.p(); ++lam, pt = zp2.add(pt, ui)) {
      const auto& leaf = leaves[static_cast<std::size_t>(pt)];
      if (leaf.empty()) continue;
      if (seen && !(*seen == leaf)) return false;
      seen = &leaf;
    }
  }
  return true;
}

/// Least nonzero u in Z_p^2 and v in Z_q^2 whose directions S - S misses
/// (so no lambda u nor mu v is a difference).
struct UndeterminedPair {
  std::optional<Index> u;  // index in Z_p^2
  std::optional<Index> v;  // index in Z_q^2

  bool both() const noexcept { return u && v; }
};

inline UndeterminedPair undetermined_sylow_directions(const PQShape& shape, const Multiset& s) {
  require_same_group(shape.group(), s.group());
  const auto& t = tables_for(shape.group());
  const auto set = s.support();
  const Bitset diffs = difference_bits(t, set);
  UndeterminedPair r;
  for (Index a = 1; a < shape.zp2().order() && !r.u; ++a)
    if (!diffs.test(static_cast<std::size_t>(shape.compose(a, 0)))) r.u = a;
  for (Index b = 1; b < shape.zq2().order() && !r.v; ++b)
    if (!diffs.test(static_cast<std::size_t>(shape.compose(0, b)))) r.v = b;
  return r;
}

struct ConstancyCheck {
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
};

/// T on Z_p x Z_q^2: hypothesis = chi_{x+y}(T) = 0 for all nonzero x in Z_p,
/// y in Z_q^2; conclusion = leaf differences g_i - g_j are constant.
inline ConstancyCheck prop1_validate(const Multiset& t) {
  const auto& m = t.group().moduli();
  if (m.size() != 3 || m[1] != m[2] || m[0] == m[1] || !is_prime(m[0]) || !is_prime(m[1]))
    fail(Errc::WrongShape, "expected Z_p x Z_q^2, got " + t.group().to_string());
  const Group& g = t.group();
  const auto p = m[0], q = m[1];
  const auto& eng = engine_for(g);
  ConstancyCheck r;
  r.hypothesis_holds = true;
  for (std::int64_t x = 1; x < p && r.hypothesis_holds; ++x)
    for (Index y = 1; y < q * q; ++y)
      if (!eng.vanishes(t, x * q * q + y)) {
        r.hypothesis_holds = false;
        break;
      }
  r.conclusion_holds = true;
  for (std::int64_t i = 1; i < p && r.conclusion_holds; ++i) {
    const Count diff0 = t[i * q * q] - t[0];
    for (Index z = 1; z < q * q; ++z)
      if (t[i * q * q + z] - t[z] != diff0) {
        r.conclusion_holds = false;
        break;
      }
  }
  return r;
}

enum class TrichotomyDirection { A0, B0, AB };

constexpr std::string_view to_string(TrichotomyDirection d) {
  switch (d) {
    case TrichotomyDirection::A0: return "[a,0]";
    case TrichotomyDirection::B0: return "[0,b]";
    case TrichotomyDirection::AB: return "[a,b]";
  }
  return "?";
}

struct TrichotomyEntry {
  Index a = 0;  // in Z_p^2
  Index b = 0;  // in Z_q^2
  TrichotomyDirection which = TrichotomyDirection::A0;
};

/// Either A tiles with |A| = pq (witnessed by the subgroup <(a,b)>), or every
/// pair (a, b) of nonzero parts has one of [a,0], [0,b], [a,b] in D(A).
/// `failure` is set only if neither outcome holds.
struct TrichotomyResult {
  bool tile_of_size_pq = false;
  std::optional<Subgroup> tiling_subgroup;
  std::vector<TrichotomyEntry> witnesses;
  std::optional<std::pair<Index, Index>> failure;
};

inline TrichotomyResult direction_trichotomy(const PQShape& shape, const Multiset& a) {
  require_same_group(shape.group(), a.group());
  detail::require_set(a, "A");
  if (a.mass() < shape.p() * shape.q()) fail(Errc::TooSmall, "|A| must be at least pq");
  const auto& t = tables_for(shape.group());
  const auto set = a.support();
  const Bitset diffs = difference_bits(t, set);
  std::vector<bool> determined(t.direction_classes().size(), false);
  diffs.for_each([&](std::size_t d) { determined[t.direction_class_of(static_cast<Index>(d))] = true; });
  auto has = [&](Index x) { return determined[t.direction_class_of(x)]; };

  TrichotomyResult r;
  for (Index ap = 1; ap < shape.zp2().order(); ++ap)
    for (Index bq = 1; bq < shape.zq2().order(); ++bq) {
      const Index a0 = shape.compose(ap, 0), b0 = shape.compose(0, bq), ab = shape.compose(ap, bq);
      if (has(a0)) r.witnesses.push_back({ap, bq, TrichotomyDirection::A0});
      else if (has(b0)) r.witnesses.push_back({ap, bq, TrichotomyDirection::B0});
      else if (has(ab)) r.witnesses.push_back({ap, bq, TrichotomyDirection::AB});
      else {
        const Index gen[] = {ab};
        Subgroup h = generated_subgroup(shape.group(), gen);
        if (a.mass() == shape.p() * shape.q() && is_tiling_pair(a, h.as_multiset())) {
          r.tile_of_size_pq = true;
          r.tiling_subgroup = std::move(h);
          r.witnesses.clear();
        } else {
          r.failure = std::pair{ap, bq};
        }
        return r;
      }
    }
  return r;
}

}  // namespace fuglede
