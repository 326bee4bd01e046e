#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "fuglede/bitset.hpp"

namespace fuglede {

enum class SearchStatus { Found, None, Undecided };

constexpr std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::Undecided: return "undecided";
  }
  return "?";
}

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

/// Branch and bound for a clique of exactly `target` vertices. Vertices are
/// branched in index order; each node greedily colors its candidate set from
/// the back so that every suffix carries its own color bound.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<Bitset>& adjacency, std::size_t target, std::uint64_t budget)
      : adj_(adjacency), target_(target), budget_(budget) {}

  SearchStatus run() {
    clique_.clear();
    nodes_ = 0;
    exhausted_ = false;
    if (target_ == 0) return SearchStatus::Found;
    Bitset all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
    if (expand(all)) return SearchStatus::Found;
    return exhausted_ ? SearchStatus::Undecided : SearchStatus::None;
  }

  const std::vector<std::size_t>& clique() const noexcept { return clique_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool expand(const Bitset& cand) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const std::size_t need = target_ - clique_.size();
    if (cand.count() < need) return false;

    std::vector<std::size_t> order;
    cand.for_each([&](std::size_t v) { order.push_back(v); });
    // Greedy coloring from the last vertex backwards.
    std::vector<Bitset> classes;
    std::vector<std::size_t> suffix_colors(order.size() + 1, 0);
    for (std::size_t k = order.size(); k-- > 0;) {
      const std::size_t v = order[k];
      std::size_t c = 0;
      while (c < classes.size() && classes[c].intersects(adj_[v])) ++c;
      if (c == classes.size()) classes.emplace_back(adj_.size());
      classes[c].set(v);
      suffix_colors[k] = classes.size();
    }

    Bitset rest = cand;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (suffix_colors[k] < need) return false;
      const std::size_t v = order[k];
      rest.reset(v);
      clique_.push_back(v);
      if (need == 1) return true;
      if (expand(rest & adj_[v])) return true;
      clique_.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  const std::vector<Bitset>& adj_;
  std::size_t target_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> clique_;
};

/// Algorithm X over bitset options. Branches on the uncovered item with the
/// fewest compatible options (lowest item on ties); options in index order.
class ExactCover {
 public:
  ExactCover(std::size_t items, const std::vector<Bitset>& options, std::uint64_t budget)
      : items_(items), options_(options), budget_(budget), by_item_(items) {
    for (std::size_t o = 0; o < options_.size(); ++o)
      options_[o].for_each([&](std::size_t i) { by_item_[i].push_back(o); });
  }

  /// Searches for a cover that contains every option in `forced`.
  SearchStatus run(std::span<const std::size_t> forced = {}) {
    chosen_.clear();
    nodes_ = 0;
    exhausted_ = false;
    Bitset covered(items_);
    for (auto o : forced) {
      if (covered.intersects(options_[o])) return SearchStatus::None;
      covered |= options_[o];
      chosen_.push_back(o);
    }
    if (search(covered)) return SearchStatus::Found;
    return exhausted_ ? SearchStatus::Undecided : SearchStatus::None;
  }

  const std::vector<std::size_t>& chosen() const noexcept { return chosen_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool search(Bitset& covered) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    std::size_t best_item = Bitset::npos;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < items_; ++i) {
      if (covered.test(i)) continue;
      std::size_t n = 0;
      for (auto o : by_item_[i])
        if (!covered.intersects(options_[o])) ++n;
      if (n < best_count) {
        best_count = n;
        best_item = i;
        if (n == 0) return false;
      }
    }
    if (best_item == Bitset::npos) return true;
    for (auto o : by_item_[best_item]) {
      if (covered.intersects(options_[o])) continue;
      covered |= options_[o];
      chosen_.push_back(o);
      if (search(covered)) return true;
      chosen_.pop_back();
      covered.subtract(options_[o]);
      if (exhausted_) return false;
    }
    return false;
  }

  std::size_t items_;
  const std::vector<Bitset>& options_;
  std::uint64_t budget_;
  std::vector<std::vector<std::size_t>> by_item_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace fuglede
