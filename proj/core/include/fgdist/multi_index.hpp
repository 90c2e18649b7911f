#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fgdist {

// Exponent vector with inline storage. Sixteen slots cover rank-3 tensor
// layouts of five coordinates, which is more than any check here needs.
class MultiIndex {
 public:
  static constexpr std::size_t kCapacity = 16;
  using value_type = std::uint16_t;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t length);
  MultiIndex(std::initializer_list<unsigned> entries);
  explicit MultiIndex(std::span<const unsigned> entries);

  std::size_t size() const noexcept { return size_; }
  value_type operator[](std::size_t i) const noexcept { return e_[i]; }
  value_type& operator[](std::size_t i) noexcept { return e_[i]; }
  const value_type* begin() const noexcept { return e_.data(); }
  const value_type* end() const noexcept { return e_.data() + size_; }

  unsigned degree() const noexcept;
  std::uint64_t weighted_degree(std::span<const std::uint64_t> weights) const;
  bool is_zero() const noexcept { return degree() == 0; }
  std::vector<unsigned> to_vector() const { return {begin(), end()}; }
  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.e_[i] != b.e_[i]) return false;
    return true;
  }

 private:
  std::array<value_type, kCapacity> e_{};
  std::uint8_t size_ = 0;
};

MultiIndex multiindex_add(const MultiIndex& a, const MultiIndex& b);

// Weighted degree first, then lexicographic with a larger leading entry
// ranking higher. Returns <0, 0, >0.
int multiindex_cmp_gradedlex(const MultiIndex& a, const MultiIndex& b,
                             std::span<const std::uint64_t> weights);
int multiindex_cmp_gradedlex(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ m.size();
    for (auto v : m) h = (h ^ v) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace fgdist
