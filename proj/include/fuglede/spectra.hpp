#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group.hpp"
#include "fuglede/search.hpp"

namespace fuglede {

struct SpectrumWitness {
  Multiset lambda;
  std::int64_t checked_pairs = 0;
};

template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<T> witness;
  std::uint64_t nodes = 0;
};

namespace detail {

inline void require_set(const Multiset& s, const char* what) {
  if (!s.is_set()) fail(Errc::InvalidArgument, std::string(what) + " must be a set (0/1 multiplicities)");
}

/// Number of unordered pairs of `lambda` checked, or -1 if some nonzero
/// difference is not a zero of the character sum of `set`.
inline std::int64_t count_orthogonal_pairs(const FourierEngine& eng, std::span<const Index> set,
                                           std::span<const Index> lambda) {
  const auto& t = eng.tables();
  std::map<Index, bool> memo;
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      const Index d = t.sub(lambda[i], lambda[j]);
      if (d == 0) return -1;
      auto [it, fresh] = memo.try_emplace(d, false);
      if (fresh) it->second = eng.vanishes(set, d);
      if (!it->second) return -1;
      ++pairs;
    }
  return pairs;
}

}  // namespace detail

/// |S| = |L| and every nonzero difference of L is a zero of chi(S).
inline bool is_spectral_pair(const Multiset& s, const Multiset& l) {
  require_same_group(s.group(), l.group());
  detail::require_set(s, "S");
  detail::require_set(l, "L");
  if (s.mass() != l.mass()) return false;
  const auto& eng = engine_for(s.group());
  const auto ss = s.support();
  const auto ll = l.support();
  return detail::count_orthogonal_pairs(eng, ss, ll) >= 0;
}

/// Outcome of a spectrum search over indices; lambda contains 0.
struct SpectrumSearch {
  SearchStatus status = SearchStatus::None;
  std::vector<Index> lambda;
  std::uint64_t nodes = 0;
};

/// Searches for a clique of size |S| through 0 in the Cayley graph of the
/// zero set `zeros` (which must be closed under negation).
inline SpectrumSearch find_spectrum_in_zero_set(const GroupTables& t, const Bitset& zeros, std::size_t size,
                                                std::uint64_t budget) {
  SpectrumSearch out;
  if (size == 0) fail(Errc::EmptyInput, "spectrum search needs a nonempty set");
  if (size == 1) {
    out.status = SearchStatus::Found;
    out.lambda = {0};
    return out;
  }
  std::vector<Index> verts;
  zeros.for_each([&](std::size_t v) { verts.push_back(static_cast<Index>(v)); });
  if (verts.size() + 1 < size) {
    out.status = SearchStatus::None;
    return out;
  }
  // Degrees inside the induced graph on the zero set.
  std::vector<std::size_t> degree(verts.size(), 0);
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      if (zeros.test(static_cast<std::size_t>(t.sub(verts[a], verts[b])))) {
        ++degree[a];
        ++degree[b];
      }
  std::vector<std::size_t> perm(verts.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::vector<Index> ordered(verts.size());
  for (std::size_t i = 0; i < perm.size(); ++i) ordered[i] = verts[perm[i]];

  std::vector<Bitset> adj(ordered.size(), Bitset(ordered.size()));
  for (std::size_t a = 0; a < ordered.size(); ++a)
    for (std::size_t b = a + 1; b < ordered.size(); ++b)
      if (zeros.test(static_cast<std::size_t>(t.sub(ordered[a], ordered[b])))) {
        adj[a].set(b);
        adj[b].set(a);
      }
  CliqueSearch search(adj, size - 1, budget);
  out.status = search.run();
  out.nodes = search.nodes();
  if (out.status == SearchStatus::Found) {
    out.lambda.push_back(0);
    for (auto v : search.clique()) out.lambda.push_back(ordered[v]);
    std::sort(out.lambda.begin(), out.lambda.end());
  }
  return out;
}

inline SpectrumSearch find_spectrum(const FourierEngine& eng, std::span<const Index> set,
                                    std::uint64_t budget = kDefaultBudget) {
  if (set.empty()) fail(Errc::EmptyInput, "spectrum search needs a nonempty set");
  return find_spectrum_in_zero_set(eng.tables(), eng.zero_set(set), set.size(), budget);
}

/// Spectrum containing 0, or none when exhaustive search rules one out.
inline SearchResult<SpectrumWitness> find_spectrum(const Multiset& s, std::uint64_t budget = kDefaultBudget) {
  detail::require_set(s, "S");
  if (s.empty()) fail(Errc::EmptyInput, "spectrum search needs a nonempty set");
  const auto& eng = engine_for(s.group());
  const auto set = s.support();
  auto found = find_spectrum(eng, set, budget);
  SearchResult<SpectrumWitness> out;
  out.status = found.status;
  out.nodes = found.nodes;
  if (found.status == SearchStatus::Found) {
    const auto pairs = detail::count_orthogonal_pairs(eng, set, found.lambda);
    if (pairs < 0) fail(Errc::TheoremViolation, "spectrum search produced an unverifiable witness");
    out.witness = SpectrumWitness{Multiset::from_indices(s.group(), found.lambda), pairs};
  }
  return out;
}

inline bool is_spectral(const Multiset& s, std::uint64_t budget = kDefaultBudget) {
  auto r = find_spectrum(s, budget);
  if (r.status == SearchStatus::Undecided)
    fail(Errc::BudgetExhausted, "spectrum search exceeded " + std::to_string(budget) + " nodes");
  return r.status == SearchStatus::Found;
}

/// Coset id of every element for the subgroup h (smallest member of x + H).
inline std::vector<Index> coset_labels(const GroupTables& t, const Subgroup& h) {
  std::vector<Index> label(t.size(), -1);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (label[x] >= 0) continue;
    for (auto m : h.indices()) label[static_cast<std::size_t>(t.add(static_cast<Index>(x), m))] = static_cast<Index>(x);
  }
  return label;
}

/// Coset sums of A over H are all equal.
inline bool equidistributed(const Multiset& a, const Subgroup& h) {
  require_same_group(a.group(), h.group());
  const auto& t = tables_for(a.group());
  const auto label = coset_labels(t, h);
  std::map<Index, Count> sums;
  for (std::size_t x = 0; x < t.size(); ++x) sums.try_emplace(label[x], 0);
  for (const auto& [x, c] : a) sums[label[static_cast<std::size_t>(x)]] += c;
  const Count first = sums.begin()->second;
  return std::all_of(sums.begin(), sums.end(), [&](const auto& kv) { return kv.second == first; });
}

}  // namespace fuglede
