#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace control_forge {

inline constexpr std::size_t kMaxCandidates = 64;

/// A set of candidate indices (positions in the election's canonical
/// candidate order), stored as a 64-bit mask.
class CandidateSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::size_t;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}

    std::size_t operator*() const {
      return static_cast<std::size_t>(std::countr_zero(rest_));
    }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr CandidateSet() = default;
  static constexpr CandidateSet from_bits(std::uint64_t bits) {
    CandidateSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, 1, ..., count-1}
  static constexpr CandidateSet first_n(std::size_t count) {
    return from_bits(count >= 64 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << count) - 1);
  }
  static CandidateSet of(std::initializer_list<std::size_t> members) {
    CandidateSet s;
    for (std::size_t m : members) s.insert(m);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t i) const {
    return i < 64 && ((bits_ >> i) & 1U) != 0;
  }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool is_subset_of(CandidateSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  /// The single member of a one-element set.
  std::size_t only() const { return *begin(); }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  std::vector<std::size_t> to_vector() const {
    return std::vector<std::size_t>(begin(), end());
  }

  friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr CandidateSet operator-(CandidateSet a, CandidateSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace control_forge
