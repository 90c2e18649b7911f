#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace fgdist {

// The characteristic. Kernels work on raw residues through these helpers;
// FieldElement is the checked value type used at API boundaries.
class Prime {
 public:
  explicit Prime(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }

  std::uint32_t reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  // Throws DomainError on zero.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

class FieldElement {
 public:
  FieldElement(std::int64_t value, Prime p) : residue_(p.reduce(value)), p_(p) {}

  std::uint32_t residue() const noexcept { return residue_; }
  Prime prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return residue_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return FieldElement(p_.neg(residue_), p_); }
  FieldElement inverse() const { return FieldElement(p_.inv(residue_), p_); }
  FieldElement pow(std::uint64_t e) const { return FieldElement(p_.pow(residue_, e), p_); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  // Equality across different characteristics is an error, not false.
  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  std::uint32_t residue_;
  Prime p_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

struct PadicDigits {
  std::vector<std::uint32_t> digits;  // least significant first, no trailing zeros
  std::uint64_t value = 0;
};

PadicDigits padic_digits(std::uint64_t n, Prime p);
// Digit d_t of n, zero beyond the expansion.
std::uint32_t padic_digit(std::uint64_t n, Prime p, unsigned t);
// n!_p = n_0! n_1! ... reduced mod p.
FieldElement padic_factorial(std::uint64_t n, Prime p);
// C(a,b) mod p by Lucas' theorem; zero when b > a.
FieldElement binom_mod_p(std::uint64_t a, std::uint64_t b, Prime p);
std::uint32_t binom_residue(std::uint64_t a, std::uint64_t b, Prime p);

std::uint64_t ipow(std::uint64_t base, unsigned e);

}  // namespace fgdist
