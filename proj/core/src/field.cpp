#include "fgdist/field.hpp"

#include <ostream>
#include <string>

#include "fgdist/error.hpp"

namespace fgdist {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

std::uint32_t Prime::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t r = 1 % p_;
  std::uint32_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t Prime::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(p_ == o.p_))
    throw DomainError("mixed characteristics " + std::to_string(p_.value()) + " and " +
                      std::to_string(o.p_.value()));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return FieldElement(p_.add(residue_, o.residue_), p_);
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return FieldElement(p_.sub(residue_, o.residue_), p_);
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return FieldElement(p_.mul(residue_, o.residue_), p_);
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return FieldElement(p_.mul(residue_, p_.inv(o.residue_)), p_);
}
bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return residue_ == o.residue_;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.residue(); }

PadicDigits padic_digits(std::uint64_t n, Prime p) {
  PadicDigits out;
  out.value = n;
  while (n) {
    out.digits.push_back(static_cast<std::uint32_t>(n % p.value()));
    n /= p.value();
  }
  return out;
}

std::uint32_t padic_digit(std::uint64_t n, Prime p, unsigned t) {
  for (unsigned i = 0; i < t && n; ++i) n /= p.value();
  return static_cast<std::uint32_t>(n % p.value());
}

FieldElement padic_factorial(std::uint64_t n, Prime p) {
  std::uint32_t acc = 1 % p.value();
  for (std::uint32_t d : padic_digits(n, p).digits)
    for (std::uint32_t k = 2; k <= d; ++k) acc = p.mul(acc, k);
  return FieldElement(acc, p);
}

std::uint32_t binom_residue(std::uint64_t a, std::uint64_t b, Prime p) {
  if (b > a) return 0;
  const std::uint32_t q = p.value();
  std::uint32_t acc = 1 % q;
  while (b) {
    std::uint32_t ad = static_cast<std::uint32_t>(a % q);
    std::uint32_t bd = static_cast<std::uint32_t>(b % q);
    if (bd > ad) return 0;
    // small binomial C(ad, bd) with ad < p, computed as a ratio of units
    std::uint32_t num = 1 % q, den = 1 % q;
    for (std::uint32_t i = 0; i < bd; ++i) {
      num = p.mul(num, ad - i);
      den = p.mul(den, i + 1);
    }
    acc = p.mul(acc, p.mul(num, p.inv(den)));
    a /= q;
    b /= q;
  }
  return acc;
}

FieldElement binom_mod_p(std::uint64_t a, std::uint64_t b, Prime p) {
  return FieldElement(binom_residue(a, b, p), p);
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace fgdist
