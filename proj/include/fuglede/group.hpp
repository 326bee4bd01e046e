#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/bitset.hpp"
#include "fuglede/error.hpp"
#include "fuglede/numeric.hpp"

namespace fuglede {

/// Mixed-radix position of an element; the first coordinate is the most
/// significant digit, so index order is lexicographic coordinate order.
using Index = std::int64_t;
using Count = std::int64_t;

inline constexpr Count kMaxMultiplicity = Count{1} << 31;
inline constexpr std::int64_t kMaxEnumerableOrder = std::int64_t{1} << 22;

struct Element {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Finite abelian group Z_{n_1} x ... x Z_{n_k}. The empty product is the
/// trivial group, which only appears as the target of projections.
class Group {
 public:
  Group() = default;

  explicit Group(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    strides_.assign(moduli_.size(), 1);
    for (auto n : moduli_)
      if (n < 2) fail(Errc::InvalidModulus, "cyclic factor order " + std::to_string(n) + " < 2");
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      strides_[i] = order_;
      order_ = checked_mul(order_, moduli_[i]);
    }
    for (auto n : moduli_) {
      const std::int64_t g = std::gcd(exponent_, n);
      exponent_ = checked_mul(exponent_ / g, n);
    }
  }

  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  std::int64_t order() const noexcept { return order_; }
  std::int64_t exponent() const noexcept { return exponent_; }

  bool contains(const Element& x) const noexcept {
    if (x.coords.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      if (x.coords[i] < 0 || x.coords[i] >= moduli_[i]) return false;
    return true;
  }

  void check(const Element& x) const {
    if (x.coords.size() != moduli_.size())
      fail(Errc::GroupMismatch, "element has " + std::to_string(x.coords.size()) +
                                    " coordinates, group has " + std::to_string(moduli_.size()));
    if (!contains(x)) fail(Errc::InvalidElement, "coordinate out of range in " + to_string(x));
  }

  void check(Index i) const {
    if (i < 0 || i >= order_) fail(Errc::InvalidElement, "index " + std::to_string(i) + " out of range");
  }

  Index index_of(const Element& x) const {
    check(x);
    Index idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) idx += x.coords[i] * strides_[i];
    return idx;
  }

  std::int64_t coord(Index idx, std::size_t i) const noexcept {
    return (idx / strides_[i]) % moduli_[i];
  }

  Element element_at(Index idx) const {
    check(idx);
    Element x;
    x.coords.resize(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) x.coords[i] = coord(idx, i);
    return x;
  }

  Element zero() const { return Element{std::vector<std::int64_t>(moduli_.size(), 0)}; }

  Index add(Index a, Index b) const noexcept {
    Index r = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      r += ((coord(a, i) + coord(b, i)) % moduli_[i]) * strides_[i];
    return r;
  }

  Index neg(Index a) const noexcept {
    Index r = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      r += ((moduli_[i] - coord(a, i)) % moduli_[i]) * strides_[i];
    return r;
  }

  Index sub(Index a, Index b) const noexcept { return add(a, neg(b)); }

  Index scale(Index a, std::int64_t k) const noexcept {
    Index r = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      const auto n = moduli_[i];
      r += static_cast<Index>(static_cast<__int128>(coord(a, i)) * mod(k, n) % n) * strides_[i];
    }
    return r;
  }

  Element add(const Element& x, const Element& y) const {
    check(x);
    check(y);
    Element r = x;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = (x.coords[i] + y.coords[i]) % moduli_[i];
    return r;
  }

  Element neg(const Element& x) const {
    check(x);
    Element r = x;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = (moduli_[i] - x.coords[i]) % moduli_[i];
    return r;
  }

  /// <x, y> = sum_i (M / n_i) x_i y_i  (mod M).
  std::int64_t dot(Index x, Index y) const noexcept {
    __int128 s = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      s += static_cast<__int128>(exponent_ / moduli_[i]) * coord(x, i) * coord(y, i);
    return static_cast<std::int64_t>(s % exponent_);
  }

  std::string to_string() const {
    if (moduli_.empty()) return "Z_1";
    std::string s;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      if (i) s += " x ";
      s += "Z_" + std::to_string(moduli_[i]);
    }
    return s;
  }

  static std::string to_string(const Element& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(x.coords[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Group& a, const Group& b) noexcept { return a.moduli_ == b.moduli_; }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> strides_;
  std::int64_t order_ = 1;
  std::int64_t exponent_ = 1;
};

inline Group make_group(std::vector<std::int64_t> moduli) { return Group(std::move(moduli)); }

inline void require_same_group(const Group& a, const Group& b) {
  if (!(a == b)) fail(Errc::GroupMismatch, a.to_string() + " vs " + b.to_string());
}

inline void require_enumerable(const Group& g) {
  if (g.order() > kMaxEnumerableOrder)
    fail(Errc::TooLarge, "group order " + std::to_string(g.order()) + " too large to enumerate");
}

inline std::int64_t dot(const Group& g, const Element& x, const Element& y) {
  return g.dot(g.index_of(x), g.index_of(y));
}

/// Least n >= 1 with n x = 0.
inline std::int64_t element_order(const Group& g, const Element& x) {
  g.check(x);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const auto n = g.moduli()[i];
    const auto o = n / std::gcd(n, x.coords[i]);
    ord = ord / std::gcd(ord, o) * o;
  }
  return ord;
}

inline std::int64_t element_order(const Group& g, Index x) {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const auto n = g.moduli()[i];
    const auto o = n / std::gcd(n, g.coord(x, i));
    ord = ord / std::gcd(ord, o) * o;
  }
  return ord;
}

/// Finite map element -> positive multiplicity. Sets are the 0/1 case.
class Multiset {
 public:
  using Entry = std::pair<Index, Count>;

  Multiset() = default;
  explicit Multiset(Group g) : group_(std::move(g)) {}

  /// Accumulates repeated indices.
  Multiset(Group g, std::vector<Entry> entries) : group_(std::move(g)) {
    for (auto& [i, c] : entries) {
      group_.check(i);
      if (c < 0) fail(Errc::InvalidArgument, "negative multiplicity");
    }
    std::sort(entries.begin(), entries.end());
    for (auto& [i, c] : entries) {
      if (c == 0) continue;
      if (!entries_.empty() && entries_.back().first == i)
        entries_.back().second += c;
      else
        entries_.emplace_back(i, c);
      if (entries_.back().second > kMaxMultiplicity) fail(Errc::Overflow, "multiplicity exceeds 2^31");
      mass_ += c;
    }
  }

  static Multiset from_indices(Group g, std::span<const Index> indices) {
    std::vector<Entry> e;
    e.reserve(indices.size());
    for (auto i : indices) e.emplace_back(i, 1);
    return Multiset(std::move(g), std::move(e));
  }

  static Multiset from_elements(Group g, std::span<const Element> elems) {
    std::vector<Entry> e;
    e.reserve(elems.size());
    for (const auto& x : elems) e.emplace_back(g.index_of(x), 1);
    return Multiset(std::move(g), std::move(e));
  }

  /// Multiset with multiplicity counts[i] at index i.
  static Multiset from_dense(Group g, std::span<const Count> counts) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] != 0) e.emplace_back(static_cast<Index>(i), counts[i]);
    return Multiset(std::move(g), std::move(e));
  }

  static Multiset whole(Group g) {
    require_enumerable(g);
    std::vector<Entry> e;
    for (Index i = 0; i < g.order(); ++i) e.emplace_back(i, 1);
    return Multiset(std::move(g), std::move(e));
  }

  const Group& group() const noexcept { return group_; }
  Count mass() const noexcept { return mass_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }

  Count operator[](Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != entries_.end() && it->first == i) ? it->second : 0;
  }
  Count count(const Element& x) const { return (*this)[group_.index_of(x)]; }

  bool is_set() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second == 1; });
  }

  std::vector<Index> support() const {
    std::vector<Index> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.first);
    return s;
  }

  std::vector<Element> support_elements() const {
    std::vector<Element> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(group_.element_at(e.first));
    return s;
  }

  std::vector<Count> dense() const {
    require_enumerable(group_);
    std::vector<Count> d(static_cast<std::size_t>(group_.order()), 0);
    for (const auto& [i, c] : entries_) d[static_cast<std::size_t>(i)] = c;
    return d;
  }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  Multiset translated(Index g) const {
    std::vector<Entry> e;
    e.reserve(entries_.size());
    for (const auto& [i, c] : entries_) e.emplace_back(group_.add(i, g), c);
    return Multiset(group_, std::move(e));
  }

  friend bool operator==(const Multiset& a, const Multiset& b) noexcept {
    return a.group_ == b.group_ && a.entries_ == b.entries_;
  }

 private:
  Group group_;
  std::vector<Entry> entries_;
  Count mass_ = 0;
};

struct Direction {
  Element rep;
  std::int64_t ord = 1;

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

/// Subgroup stored as its sorted member indices.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(Group g, std::vector<Index> members) : group_(std::move(g)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const Group& group() const noexcept { return group_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(members_.size()); }
  const std::vector<Index>& indices() const noexcept { return members_; }
  bool contains(Index i) const { return std::binary_search(members_.begin(), members_.end(), i); }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(group_.element_at(i));
    return out;
  }

  Multiset as_multiset() const { return Multiset::from_indices(group_, members_); }

  Bitset bits() const {
    Bitset b(static_cast<std::size_t>(group_.order()));
    for (auto i : members_) b.set(static_cast<std::size_t>(i));
    return b;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.group_ == b.group_ && a.members_ == b.members_;
  }

 private:
  Group group_;
  std::vector<Index> members_;
};

/// Smallest subgroup containing the given elements.
inline Subgroup generated_subgroup(const Group& g, std::span<const Index> gens) {
  require_enumerable(g);
  Bitset seen(static_cast<std::size_t>(g.order()));
  std::vector<Index> members{0};
  seen.set(0);
  for (auto x : gens) {
    g.check(x);
    if (seen.test(static_cast<std::size_t>(x))) continue;
    // Close under adding x: H + <x>.
    std::vector<Index> current = members;
    Index step = x;
    while (!seen.test(static_cast<std::size_t>(step))) {
      for (auto h : current) {
        const Index y = g.add(h, step);
        if (!seen.test(static_cast<std::size_t>(y))) {
          seen.set(static_cast<std::size_t>(y));
          members.push_back(y);
        }
      }
      step = g.add(step, x);
    }
  }
  return Subgroup(g, std::move(members));
}

/// Per-group lookup tables shared by the searches: coordinates, addition,
/// element orders, canonical directions and the subgroup lattice.
class GroupTables {
 public:
  explicit GroupTables(Group g) : group_(std::move(g)) {
    require_enumerable(group_);
    const auto n = static_cast<std::size_t>(group_.order());
    if (n <= kAddTableLimit) {
      add_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          add_[a * n + b] = static_cast<std::int32_t>(group_.add(static_cast<Index>(a), static_cast<Index>(b)));
    }
    neg_.resize(n);
    order_.resize(n);
    dir_rep_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      neg_[a] = group_.neg(static_cast<Index>(a));
      order_[a] = fuglede::element_order(group_, static_cast<Index>(a));
    }
    dir_pos_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      if (dir_rep_[a] >= 0) continue;
      const auto ord = order_[a];
      std::vector<Index> cls;
      for (std::int64_t k = 1; k <= ord; ++k)
        if (std::gcd(k, ord) == 1) cls.push_back(group_.scale(static_cast<Index>(a), k));
      std::sort(cls.begin(), cls.end());
      const Index rep = cls.front();
      for (auto m : cls) {
        dir_rep_[static_cast<std::size_t>(m)] = rep;
        dir_pos_[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(classes_.size());
      }
      classes_.push_back(std::move(cls));
    }
    std::sort(classes_.begin(), classes_.end());
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (auto m : classes_[c]) dir_pos_[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(c);
  }

  const Group& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return neg_.size(); }

  Index add(Index a, Index b) const noexcept {
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b)];
    return group_.add(a, b);
  }
  Index neg(Index a) const noexcept { return neg_[static_cast<std::size_t>(a)]; }
  Index sub(Index a, Index b) const noexcept { return add(a, neg(b)); }
  std::int64_t element_order(Index a) const noexcept { return order_[static_cast<std::size_t>(a)]; }
  Index direction_rep(Index a) const noexcept { return dir_rep_[static_cast<std::size_t>(a)]; }

  /// Direction classes sorted by representative; class 0 is {0}.
  const std::vector<std::vector<Index>>& direction_classes() const noexcept { return classes_; }
  std::size_t direction_class_of(Index a) const noexcept {
    return static_cast<std::size_t>(dir_pos_[static_cast<std::size_t>(a)]);
  }

  /// All subgroups, sorted by (order, members).
  const std::vector<Subgroup>& subgroups() const {
    std::call_once(subgroups_once_, [this] { build_subgroups(); });
    return subgroups_;
  }

  const std::vector<Bitset>& subgroup_bits() const {
    std::call_once(subgroups_once_, [this] { build_subgroups(); });
    return subgroup_bits_;
  }

 private:
  static constexpr std::size_t kAddTableLimit = 1024;

  void build_subgroups() const {
    const auto n = size();
    std::set<std::vector<Index>> seen;
    std::vector<Bitset> all;
    auto push = [&](std::vector<Index> members) {
      std::sort(members.begin(), members.end());
      if (!seen.insert(members).second) return;
      Bitset b(n);
      for (auto m : members) b.set(static_cast<std::size_t>(m));
      all.push_back(std::move(b));
    };
    for (const auto& cls : classes_) {
      std::vector<Index> cyc;
      const Index x = cls.front();
      Index y = 0;
      do {
        cyc.push_back(y);
        y = add(y, x);
      } while (y != 0);
      push(std::move(cyc));
    }
    // Close under joins H + K.
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<Index> joined;
        Bitset mark(n);
        all[i].for_each([&](std::size_t h) {
          all[j].for_each([&](std::size_t k) {
            const auto s = static_cast<std::size_t>(add(static_cast<Index>(h), static_cast<Index>(k)));
            if (!mark.test(s)) {
              mark.set(s);
              joined.push_back(static_cast<Index>(s));
            }
          });
        });
        push(std::move(joined));
      }
    }
    std::vector<std::vector<Index>> lists(seen.begin(), seen.end());
    std::stable_sort(lists.begin(), lists.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (auto& l : lists) {
      Bitset b(n);
      for (auto m : l) b.set(static_cast<std::size_t>(m));
      subgroup_bits_.push_back(std::move(b));
      subgroups_.emplace_back(group_, std::move(l));
    }
  }

  Group group_;
  std::vector<std::int32_t> add_;
  std::vector<Index> neg_;
  std::vector<std::int64_t> order_;
  std::vector<Index> dir_rep_;
  std::vector<std::int64_t> dir_pos_;
  std::vector<std::vector<Index>> classes_;
  mutable std::once_flag subgroups_once_;
  mutable std::vector<Subgroup> subgroups_;
  mutable std::vector<Bitset> subgroup_bits_;
};

/// Process-wide table cache keyed by the moduli.
inline const GroupTables& tables_for(const Group& g) {
  static std::mutex mu;
  static std::map<std::vector<std::int64_t>, std::unique_ptr<GroupTables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[g.moduli()];
  if (!slot) slot = std::make_unique<GroupTables>(g);
  return *slot;
}

inline Direction direction_rep(const Group& g, const Element& x) {
  const Index i = g.index_of(x);
  const auto& t = tables_for(g);
  return Direction{g.element_at(t.direction_rep(i)), t.element_order(i)};
}

/// {g : <s, g> = 0 for all s in supp(S)}; the dual is identified with G.
inline Subgroup annihilator(const Group& g, std::span<const Index> support) {
  require_enumerable(g);
  std::vector<Index> out;
  for (Index y = 0; y < g.order(); ++y) {
    bool ok = true;
    for (auto s : support)
      if (g.dot(s, y) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return Subgroup(g, std::move(out));
}

inline Subgroup annihilator(const Group& g, const Multiset& s) {
  require_same_group(g, s.group());
  const auto supp = s.support();
  return annihilator(g, std::span<const Index>(supp));
}

inline Subgroup annihilator(const Subgroup& h) {
  return annihilator(h.group(), std::span<const Index>(h.indices()));
}

inline std::vector<Subgroup> subgroups_of_order(const Group& g, std::int64_t m) {
  if (m < 1 || g.order() % m != 0)
    fail(Errc::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(g.order()));
  std::vector<Subgroup> out;
  for (const auto& h : tables_for(g).subgroups())
    if (h.order() == m) out.push_back(h);
  return out;
}

/// Sylow r-part of g: each factor Z_n contributes Z_{r^v} with v = v_r(n).
inline Group sylow_group(const Group& g, std::int64_t r) {
  if (!is_prime(r)) fail(Errc::InvalidArgument, std::to_string(r) + " is not prime");
  if (g.order() % r != 0) fail(Errc::NotADivisor, std::to_string(r) + " does not divide |G|");
  std::vector<std::int64_t> m;
  for (auto n : g.moduli()) {
    const int v = valuation(n, r);
    if (v > 0) m.push_back(ipow(r, v));
  }
  return Group(std::move(m));
}

inline Multiset sylow_projection(const Group& g, const Multiset& a, std::int64_t r) {
  require_same_group(g, a.group());
  Group target = sylow_group(g, r);
  std::vector<Multiset::Entry> e;
  e.reserve(a.support_size());
  for (const auto& [x, c] : a) {
    Index y = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      const int v = valuation(g.moduli()[i], r);
      if (v == 0) continue;
      y = y * target.moduli()[j] + g.coord(x, i) % target.moduli()[j];
      ++j;
    }
    e.emplace_back(y, c);
  }
  return Multiset(std::move(target), std::move(e));
}

/// S_alpha on Z_d, d = ord(alpha): bucket k collects x with <x, alpha> d / M = k.
inline Multiset project_along(const Group& g, const Multiset& a, const Element& alpha) {
  require_same_group(g, a.group());
  const Index al = g.index_of(alpha);
  const auto d = element_order(g, al);
  Group target = d == 1 ? Group() : Group({d});
  const auto step = g.exponent() / d;
  std::vector<Multiset::Entry> e;
  for (const auto& [x, c] : a) e.emplace_back(g.dot(x, al) / step, c);
  return Multiset(std::move(target), std::move(e));
}

/// Set of canonical directions of nonzero elements of S - S.
inline std::vector<Direction> determined_directions(const Multiset& s) {
  const Group& g = s.group();
  const auto& t = tables_for(g);
  std::set<Index> reps;
  for (const auto& [x, cx] : s)
    for (const auto& [y, cy] : s)
      if (x != y) reps.insert(t.direction_rep(t.sub(x, y)));
  std::vector<Direction> out;
  for (auto r : reps) out.push_back(Direction{g.element_at(r), t.element_order(r)});
  return out;
}

/// Bitset over G of S - S (including 0 when S is nonempty).
inline Bitset difference_bits(const GroupTables& t, std::span<const Index> s) {
  Bitset b(t.size());
  for (auto x : s)
    for (auto y : s) b.set(static_cast<std::size_t>(t.sub(x, y)));
  return b;
}

}  // namespace fuglede
