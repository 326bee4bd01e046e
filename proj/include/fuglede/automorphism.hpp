#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

/// Unbiased draw from [0, n) on top of mt19937_64, identical on every
/// standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do x = rng();
  while (x >= limit);
  return x % n;
}

/// Group automorphism stored as the image of every index.
class Automorphism {
 public:
  Automorphism() = default;
  explicit Automorphism(std::vector<Index> image) : image_(std::move(image)) {}

  Index operator()(Index x) const noexcept { return image_[static_cast<std::size_t>(x)]; }
  const std::vector<Index>& image() const noexcept { return image_; }

  Multiset apply(const Multiset& a) const {
    std::vector<Multiset::Entry> e;
    for (const auto& [x, c] : a) e.emplace_back((*this)(x), c);
    return Multiset(a.group(), std::move(e));
  }

 private:
  std::vector<Index> image_;
};

/// Aut(G) for groups whose cyclic factors all have prime order, i.e. the
/// product of GL_d(r) over the primes r; coordinates with equal modulus form
/// one block.
class AutomorphismGroup {
 public:
  explicit AutomorphismGroup(Group g) : group_(std::move(g)) {
    require_enumerable(group_);
    for (std::size_t i = 0; i < group_.rank(); ++i) {
      const auto n = group_.moduli()[i];
      if (!is_prime(n)) fail(Errc::Unsupported, "automorphisms need prime-order cyclic factors");
      auto it = std::find_if(blocks_.begin(), blocks_.end(), [&](const Block& b) { return b.prime == n; });
      if (it == blocks_.end()) blocks_.push_back(Block{n, {i}});
      else it->coords.push_back(i);
    }
  }

  const Group& group() const noexcept { return group_; }

  /// Number of automorphisms (saturating).
  std::int64_t size() const {
    __int128 total = 1;
    for (const auto& b : blocks_) {
      const auto d = static_cast<int>(b.coords.size());
      const __int128 qd = ipow(b.prime, d);
      for (int i = 0; i < d; ++i) {
        total *= qd - ipow(b.prime, i);
        if (total > INT64_MAX) return INT64_MAX;
      }
    }
    return static_cast<std::int64_t>(total);
  }

  Automorphism random(std::mt19937_64& rng) const {
    std::vector<Matrix> mats;
    for (const auto& b : blocks_) {
      const auto d = b.coords.size();
      Matrix m(d * d);
      do
        for (auto& v : m) v = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(b.prime)));
      while (!invertible(m, d, b.prime));
      mats.push_back(std::move(m));
    }
    return build(mats);
  }

  /// Every automorphism; fails with TooLarge above `limit`.
  std::vector<Automorphism> all(std::int64_t limit = 100000) const {
    if (size() > limit) fail(Errc::TooLarge, "automorphism group has more than " + std::to_string(limit) + " elements");
    std::vector<std::vector<Matrix>> per_block;
    for (const auto& b : blocks_) {
      const auto d = b.coords.size();
      std::vector<Matrix> mats;
      const auto total = ipow(b.prime, static_cast<int>(d * d));
      for (std::int64_t code = 0; code < total; ++code) {
        Matrix m(d * d);
        auto c = code;
        for (auto& v : m) {
          v = c % b.prime;
          c /= b.prime;
        }
        if (invertible(m, d, b.prime)) mats.push_back(std::move(m));
      }
      per_block.push_back(std::move(mats));
    }
    std::vector<Automorphism> out;
    std::vector<std::size_t> pick(per_block.size(), 0);
    while (true) {
      std::vector<Matrix> mats;
      for (std::size_t k = 0; k < pick.size(); ++k) mats.push_back(per_block[k][pick[k]]);
      out.push_back(build(mats));
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == per_block[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
    return out;
  }

 private:
  using Matrix = std::vector<std::int64_t>;  // row-major d x d over F_r

  struct Block {
    std::int64_t prime;
    std::vector<std::size_t> coords;
  };

  static bool invertible(Matrix m, std::size_t d, std::int64_t r) {
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (piv < d && m[piv * d + col] % r == 0) ++piv;
      if (piv == d) return false;
      for (std::size_t j = 0; j < d; ++j) std::swap(m[col * d + j], m[piv * d + j]);
      std::int64_t inv = 1;
      while (inv * m[col * d + col] % r != 1) ++inv;
      for (std::size_t row = col + 1; row < d; ++row) {
        const auto f = m[row * d + col] * inv % r;
        for (std::size_t j = 0; j < d; ++j) m[row * d + j] = mod(m[row * d + j] - f * m[col * d + j], r);
      }
    }
    return true;
  }

  Automorphism build(const std::vector<Matrix>& mats) const {
    const auto n = static_cast<std::size_t>(group_.order());
    std::vector<Index> image(n);
    Element x = group_.zero();
    for (std::size_t idx = 0; idx < n; ++idx) {
      const Element src = group_.element_at(static_cast<Index>(idx));
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const auto& b = blocks_[k];
        const auto d = b.coords.size();
        for (std::size_t row = 0; row < d; ++row) {
          std::int64_t s = 0;
          for (std::size_t col = 0; col < d; ++col) s += mats[k][row * d + col] * src.coords[b.coords[col]];
          x.coords[b.coords[row]] = s % b.prime;
        }
      }
      image[idx] = group_.index_of(x);
    }
    return Automorphism(std::move(image));
  }

  Group group_;
  std::vector<Block> blocks_;
};

/// True when the sorted 0-containing set is the lexicographically least
/// member of its orbit under translations (normalized to contain 0) and the
/// given automorphisms.
inline bool is_canonical(const GroupTables& t, std::span<const Automorphism> auts, std::span<const Index> sorted_set) {
  const std::size_t k = sorted_set.size();
  std::vector<Index> mapped(k), image(k);
  for (const auto& phi : auts) {
    for (std::size_t i = 0; i < k; ++i) mapped[i] = phi(sorted_set[i]);
    for (std::size_t s = 0; s < k; ++s) {
      const Index shift = t.neg(mapped[s]);
      for (std::size_t i = 0; i < k; ++i) image[i] = t.add(mapped[i], shift);
      std::sort(image.begin(), image.end());
      if (std::lexicographical_compare(image.begin(), image.end(), sorted_set.begin(), sorted_set.end()))
        return false;
    }
  }
  return true;
}

}  // namespace fuglede
