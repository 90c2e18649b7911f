#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgdist/field.hpp"
#include "fgdist/multi_index.hpp"

namespace fgdist {

using Generator = std::uint16_t;
using Word = std::vector<Generator>;

// Index bookkeeping for a level-R truncation over n ordered coordinates.
//
// An additive index J (every J_j <= B = p^{R+1} - 1) and a multiplicative
// monomial with digits J_{j,t} < p share one integer code,
//   sum_j J_j (B+1)^j = sum_{j,t} J_{j,t} p^{j(R+1)+t},
// so both bases live in [0, p^{n(R+1)}). Generator g = j(R+1) + t stands for
// delta_{x_j^{p^t}}; numeric order on g is the generator order, and g has
// weight p^t.
class LevelShape {
 public:
  LevelShape(Prime p, std::vector<std::string> names, unsigned level);

  Prime prime() const noexcept { return p_; }
  unsigned level() const noexcept { return level_; }
  std::size_t coordinates() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::uint32_t bound() const noexcept { return radix_ - 1; }
  std::uint32_t dimension() const noexcept { return dim_; }
  std::size_t generator_count() const noexcept { return names_.size() * (level_ + 1); }

  // additive side
  std::uint32_t exponent(std::uint32_t idx, std::size_t coord) const noexcept {
    return (idx / radix_pow_[coord]) % radix_;
  }
  MultiIndex exponents(std::uint32_t idx) const;
  // Throws DomainError when an entry exceeds the bound.
  std::uint32_t index(const MultiIndex& j) const;
  unsigned degree(std::uint32_t idx) const noexcept;
  // Exponent-wise sum when it stays inside the box.
  bool add_indices(std::uint32_t a, std::uint32_t b, std::uint32_t& out) const noexcept;

  // generators
  Generator generator(std::size_t coord, unsigned power) const noexcept {
    return static_cast<Generator>(coord * (level_ + 1) + power);
  }
  std::size_t coord_of(Generator g) const noexcept { return g / (level_ + 1); }
  unsigned power_of(Generator g) const noexcept { return g % (level_ + 1); }
  std::uint32_t weight(Generator g) const noexcept { return pow_p_[power_of(g)]; }
  std::uint32_t generator_code(Generator g) const noexcept { return digit_place_[g]; }
  std::uint32_t digit(std::uint32_t idx, Generator g) const noexcept {
    return (idx / digit_place_[g]) % p_.value();
  }
  std::string generator_name(Generator g) const;

  // multiplicative side: the ascending generator word of a monomial
  Word word(std::uint32_t idx) const;
  // Sorted word with digits < p; throws DomainError otherwise.
  std::uint32_t from_word(const Word& w) const;
  std::uint64_t word_degree(const Word& w) const noexcept;

  // Graded-lex orders; return <0, 0, >0.
  int compare_additive(std::uint32_t a, std::uint32_t b) const noexcept;
  int compare_words(const Word& a, const Word& b) const noexcept;
  int compare_monomials(std::uint32_t a, std::uint32_t b) const { return compare_words(word(a), word(b)); }

  // J!_p, the leading coefficient of the monomial with code J.
  std::uint32_t padic_factorial_of(std::uint32_t idx) const;

  friend bool operator==(const LevelShape& a, const LevelShape& b) {
    return a.p_ == b.p_ && a.names_ == b.names_ && a.level_ == b.level_;
  }

 private:
  Prime p_;
  std::vector<std::string> names_;
  unsigned level_;
  std::uint32_t radix_;
  std::uint32_t dim_;
  std::vector<std::uint32_t> radix_pow_;
  std::vector<std::uint32_t> digit_place_;
  std::vector<std::uint32_t> pow_p_;
};

}  // namespace fgdist
