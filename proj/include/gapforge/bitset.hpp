#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace gapforge {

/// Fixed-length bit vector with the word-parallel operations the enumeration
/// kernels need.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits, bool fill = false)
      : bits_(bits), words_((bits + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  /// |this & o| without materializing the intersection.
  std::size_t and_count(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
        word &= word - 1;
      }
    }
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void trim() {
    if (bits_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gapforge
