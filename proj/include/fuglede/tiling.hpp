#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fuglede/automorphism.hpp"
#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/search.hpp"
#include "fuglede/spectra.hpp"

namespace fuglede {

enum class ComplementMethod { ExactCover, Subgroup };

constexpr std::string_view to_string(ComplementMethod m) {
  return m == ComplementMethod::Subgroup ? "subgroup" : "exact-cover";
}

struct ComplementWitness {
  Multiset t;
  ComplementMethod method = ComplementMethod::ExactCover;
};

/// |S||T| = |G| and every element is s + t for exactly one pair.
inline bool is_tiling_pair(const Multiset& s, const Multiset& t) {
  require_same_group(s.group(), t.group());
  detail::require_set(s, "S");
  detail::require_set(t, "T");
  const Group& g = s.group();
  if (s.mass() * t.mass() != g.order()) return false;
  const auto& tab = tables_for(g);
  Bitset hit(tab.size());
  for (const auto& [x, cx] : s)
    for (const auto& [y, cy] : t) {
      const auto z = static_cast<std::size_t>(tab.add(x, y));
      if (hit.test(z)) return false;
      hit.set(z);
    }
  return true;
}

/// Same predicate through 1_S^ 1_T^ = |G| delta: sizes multiply to |G| and
/// no nonzero character misses both zero sets.
inline bool is_tiling_pair_fourier(const Multiset& s, const Multiset& t) {
  require_same_group(s.group(), t.group());
  const Group& g = s.group();
  if (s.mass() * t.mass() != g.order()) return false;
  const auto& eng = engine_for(g);
  for (Index y = 1; y < g.order(); ++y)
    if (!eng.vanishes(s, y) && !eng.vanishes(t, y)) return false;
  return true;
}

/// Position in tables.subgroups() of a subgroup H with |S||H| = |G| meeting
/// S - S only in 0, given the difference bitset of S.
inline std::optional<std::size_t> subgroup_complement_index(const GroupTables& t, const Bitset& diffs,
                                                            std::size_t set_size) {
  if (set_size == 0 || t.size() % set_size != 0) return std::nullopt;
  const auto want = static_cast<std::int64_t>(t.size() / set_size);
  const auto& subs = t.subgroups();
  const auto& bits = t.subgroup_bits();
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k].order() != want) continue;
    if (bits[k].intersection_count(diffs) == 1) return k;
  }
  return std::nullopt;
}

inline std::optional<Subgroup> tiles_by_subgroup(const Multiset& s) {
  detail::require_set(s, "S");
  const Group& g = s.group();
  if (s.mass() == 0 || g.order() % s.mass() != 0)
    fail(Errc::NotADivisor, "|S| = " + std::to_string(s.mass()) + " does not divide |G|");
  const auto& t = tables_for(g);
  const auto set = s.support();
  const auto k = subgroup_complement_index(t, difference_bits(t, set), set.size());
  if (!k) return std::nullopt;
  return t.subgroups()[*k];
}

struct ComplementSearch {
  SearchStatus status = SearchStatus::None;
  std::vector<Index> complement;
  std::uint64_t nodes = 0;
};

/// Exact cover of G by translates S + g, with the translate g = 0 forced.
inline ComplementSearch find_complement(const GroupTables& t, std::span<const Index> set,
                                        std::uint64_t budget = kDefaultBudget) {
  if (set.empty()) fail(Errc::EmptyInput, "complement search needs a nonempty set");
  ComplementSearch out;
  const auto n = t.size();
  if (n % set.size() != 0) return out;
  std::vector<Bitset> options(n, Bitset(n));
  for (std::size_t g = 0; g < n; ++g)
    for (auto x : set) options[g].set(static_cast<std::size_t>(t.add(x, static_cast<Index>(g))));
  // A translate that overlaps S itself can never join a cover containing S.
  const std::size_t forced[] = {0};
  ExactCover cover(n, options, budget);
  out.status = cover.run(forced);
  out.nodes = cover.nodes();
  if (out.status == SearchStatus::Found) {
    for (auto o : cover.chosen()) out.complement.push_back(static_cast<Index>(o));
    std::sort(out.complement.begin(), out.complement.end());
  }
  return out;
}

inline SearchResult<ComplementWitness> find_complement(const Multiset& s, std::uint64_t budget = kDefaultBudget) {
  detail::require_set(s, "S");
  if (s.empty()) fail(Errc::EmptyInput, "complement search needs a nonempty set");
  const auto& t = tables_for(s.group());
  const auto set = s.support();
  auto found = find_complement(t, set, budget);
  SearchResult<ComplementWitness> out;
  out.status = found.status;
  out.nodes = found.nodes;
  if (found.status == SearchStatus::Found) {
    ComplementWitness w{Multiset::from_indices(s.group(), found.complement), ComplementMethod::ExactCover};
    if (!is_tiling_pair(s, w.t)) fail(Errc::TheoremViolation, "exact cover produced an invalid complement");
    out.witness = std::move(w);
  }
  return out;
}

/// How candidate sets are drawn: every 0-containing k-subset in
/// lexicographic order, or `count` seeded random 0-containing k-subsets.
struct EnumerationMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::int64_t count = 0;
  bool canonicalize = false;

  static EnumerationMode all(bool canonical = false) { return {true, 0, 0, canonical}; }
  static EnumerationMode sample(std::uint64_t seed, std::int64_t count) { return {false, seed, count, false}; }
};

/// Pull-based stream of sorted 0-containing k-subsets of G.
class SubsetStream {
 public:
  SubsetStream(const Group& g, std::size_t k, EnumerationMode mode)
      : tables_(&tables_for(g)), k_(k), mode_(mode), rng_(mode.seed) {
    if (k == 0) fail(Errc::InvalidArgument, "subset size must be >= 1");
    n_ = tables_->size();
    if (k_ > n_) {
      done_ = true;
      return;
    }
    if (mode_.canonicalize) {
      auts_ = AutomorphismGroup(g).all();
    }
    if (mode_.exhaustive) {
      cur_.resize(k_ - 1);
      for (std::size_t i = 0; i < cur_.size(); ++i) cur_[i] = static_cast<Index>(i + 1);
    } else {
      pool_.resize(n_ - 1);
      for (std::size_t i = 0; i < pool_.size(); ++i) pool_[i] = static_cast<Index>(i + 1);
    }
  }

  /// Writes the next subset (sorted, starting with 0); false at the end.
  bool next(std::vector<Index>& out) {
    while (true) {
      if (!raw_next(out)) return false;
      if (!mode_.canonicalize || is_canonical(*tables_, auts_, out)) return true;
    }
  }

  std::int64_t produced() const noexcept { return produced_; }

 private:
  bool raw_next(std::vector<Index>& out) {
    if (done_) return false;
    out.clear();
    out.push_back(0);
    if (mode_.exhaustive) {
      out.insert(out.end(), cur_.begin(), cur_.end());
      advance();
    } else {
      if (produced_ >= mode_.count) {
        done_ = true;
        return false;
      }
      for (std::size_t i = 0; i + 1 < k_; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng_, pool_.size() - i));
        std::swap(pool_[i], pool_[j]);
        out.push_back(pool_[i]);
      }
      std::sort(out.begin(), out.end());
    }
    ++produced_;
    return true;
  }

  void advance() {
    const std::size_t r = cur_.size();
    std::size_t i = r;
    while (i > 0 && cur_[i - 1] == static_cast<Index>(n_ - r + i - 1)) --i;
    if (i == 0) {
      done_ = true;
      return;
    }
    ++cur_[i - 1];
    for (std::size_t j = i; j < r; ++j) cur_[j] = cur_[j - 1] + 1;
  }

  const GroupTables* tables_;
  std::size_t k_;
  std::size_t n_ = 0;
  EnumerationMode mode_;
  std::mt19937_64 rng_;
  std::vector<Index> cur_;
  std::vector<Index> pool_;
  std::vector<Automorphism> auts_;
  std::int64_t produced_ = 0;
  bool done_ = false;
};

/// Tiles of size k containing 0, each with a verified complement (subgroup
/// complement when one exists, exact cover otherwise).
class TileStream {
 public:
  TileStream(const Group& g, std::size_t k, EnumerationMode mode, std::uint64_t budget)
      : group_(g), subsets_(g, k, mode), budget_(budget), empty_(g.order() % static_cast<std::int64_t>(k) != 0) {}

  std::optional<std::pair<Multiset, ComplementWitness>> next() {
    if (empty_) return std::nullopt;
    const auto& t = tables_for(group_);
    std::vector<Index> set;
    while (subsets_.next(set)) {
      if (auto h = subgroup_complement_index(t, difference_bits(t, set), set.size())) {
        return std::pair{Multiset::from_indices(group_, set),
                         ComplementWitness{t.subgroups()[*h].as_multiset(), ComplementMethod::Subgroup}};
      }
      auto c = find_complement(t, set, budget_);
      if (c.status == SearchStatus::Undecided) ++undecided_;
      if (c.status == SearchStatus::Found)
        return std::pair{Multiset::from_indices(group_, set),
                         ComplementWitness{Multiset::from_indices(group_, c.complement), ComplementMethod::ExactCover}};
    }
    return std::nullopt;
  }

  std::int64_t undecided() const noexcept { return undecided_; }

 private:
  Group group_;
  SubsetStream subsets_;
  std::uint64_t budget_;
  bool empty_;
  std::int64_t undecided_ = 0;
};

/// k not dividing |G| yields an empty stream.
inline TileStream enumerate_tiles(const Group& g, std::size_t k, EnumerationMode mode,
                                  std::uint64_t budget = kDefaultBudget) {
  if (k == 0) fail(Errc::InvalidArgument, "tile size must be >= 1");
  return TileStream(g, k, mode, budget);
}

}  // namespace fuglede
