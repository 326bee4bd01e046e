#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fuglede {

/// Fixed-size bit vector with the word-level operations the searches need.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool any() const noexcept {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  bool intersects(const Bitset& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  std::size_t intersection_count(const Bitset& other) const noexcept {
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      n += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    return n;
  }

  /// First set bit at position >= from, or npos.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= size_) return npos;
    std::size_t k = from >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return npos;
      w = words_[k];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        f((k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Removes the bits of o.
  Bitset& subtract(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fuglede
