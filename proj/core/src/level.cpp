#include "fgdist/level.hpp"

#include "fgdist/error.hpp"

namespace fgdist {

LevelShape::LevelShape(Prime p, std::vector<std::string> names, unsigned level)
    : p_(p), names_(std::move(names)), level_(level) {
  if (names_.empty()) throw DomainError("a level needs at least one coordinate");
  const std::uint64_t radix = ipow(p.value(), level + 1);
  std::uint64_t dim = 1;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    dim *= radix;
    if (dim > (1ull << 30)) throw DomainError("level too large to index");
  }
  if (radix - 1 > 0xFFFF) throw DomainError("level bound exceeds the exponent range");
  radix_ = static_cast<std::uint32_t>(radix);
  dim_ = static_cast<std::uint32_t>(dim);
  for (unsigned t = 0; t <= level; ++t) pow_p_.push_back(static_cast<std::uint32_t>(ipow(p.value(), t)));
  std::uint32_t place = 1;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    radix_pow_.push_back(place);
    for (unsigned t = 0; t <= level; ++t) digit_place_.push_back(place * pow_p_[t]);
    place *= radix_;
  }
}

MultiIndex LevelShape::exponents(std::uint32_t idx) const {
  MultiIndex m(names_.size());
  for (std::size_t j = 0; j < names_.size(); ++j) m[j] = static_cast<MultiIndex::value_type>(exponent(idx, j));
  return m;
}

std::uint32_t LevelShape::index(const MultiIndex& j) const {
  if (j.size() != names_.size()) throw DomainError("multi-index length does not match the coordinates");
  std::uint32_t idx = 0;
  for (std::size_t c = 0; c < names_.size(); ++c) {
    if (j[c] > bound())
      throw DomainError("exponent " + std::to_string(j[c]) + " of " + names_[c] + " exceeds the level bound " +
                        std::to_string(bound()));
    idx += j[c] * radix_pow_[c];
  }
  return idx;
}

unsigned LevelShape::degree(std::uint32_t idx) const noexcept {
  unsigned d = 0;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    d += idx % radix_;
    idx /= radix_;
  }
  return d;
}

bool LevelShape::add_indices(std::uint32_t a, std::uint32_t b, std::uint32_t& out) const noexcept {
  std::uint32_t r = 0;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    std::uint32_t e = a % radix_ + b % radix_;
    if (e >= radix_) return false;
    r += e * radix_pow_[j];
    a /= radix_;
    b /= radix_;
  }
  out = r;
  return true;
}

std::string LevelShape::generator_name(Generator g) const {
  const auto& n = names_[coord_of(g)];
  return power_of(g) == 0 ? n : n + "^" + std::to_string(weight(g));
}

Word LevelShape::word(std::uint32_t idx) const {
  Word w;
  const std::size_t gens = generator_count();
  for (std::size_t g = 0; g < gens; ++g) {
    std::uint32_t d = idx % p_.value();
    idx /= p_.value();
    for (std::uint32_t k = 0; k < d; ++k) w.push_back(static_cast<Generator>(g));
  }
  return w;
}

std::uint32_t LevelShape::from_word(const Word& w) const {
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= generator_count()) throw DomainError("generator outside the level");
    if (i && w[i] < w[i - 1]) throw DomainError("word is not sorted");
    idx += digit_place_[w[i]];
  }
  for (std::size_t g = 0; g < generator_count(); ++g) {
    std::size_t count = 0;
    for (auto x : w) count += x == g;
    if (count >= p_.value()) throw DomainError("generator exponent reaches p");
  }
  return idx;
}

std::uint64_t LevelShape::word_degree(const Word& w) const noexcept {
  std::uint64_t d = 0;
  for (auto g : w) d += weight(g);
  return d;
}

int LevelShape::compare_additive(std::uint32_t a, std::uint32_t b) const noexcept {
  unsigned da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    auto ea = exponent(a, j), eb = exponent(b, j);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

int LevelShape::compare_words(const Word& a, const Word& b) const noexcept {
  auto da = word_degree(a), db = word_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::uint32_t LevelShape::padic_factorial_of(std::uint32_t idx) const {
  std::uint32_t acc = 1;
  for (std::size_t j = 0; j < names_.size(); ++j)
    acc = p_.mul(acc, padic_factorial(exponent(idx, j), p_).residue());
  return acc;
}

}  // namespace fgdist
