#include "fgdist/multi_index.hpp"

#include <limits>

#include "fgdist/error.hpp"

namespace fgdist {

namespace {
void check_length(std::size_t n) {
  if (n > MultiIndex::kCapacity)
    throw DomainError("multi-index longer than " + std::to_string(MultiIndex::kCapacity));
}
MultiIndex::value_type narrow(unsigned v) {
  if (v > std::numeric_limits<MultiIndex::value_type>::max())
    throw DomainError("multi-index entry too large: " + std::to_string(v));
  return static_cast<MultiIndex::value_type>(v);
}
}  // namespace

MultiIndex::MultiIndex(std::size_t length) {
  check_length(length);
  size_ = static_cast<std::uint8_t>(length);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> entries) {
  check_length(entries.size());
  size_ = static_cast<std::uint8_t>(entries.size());
  std::size_t i = 0;
  for (unsigned v : entries) e_[i++] = narrow(v);
}

MultiIndex::MultiIndex(std::span<const unsigned> entries) {
  check_length(entries.size());
  size_ = static_cast<std::uint8_t>(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) e_[i] = narrow(entries[i]);
}

unsigned MultiIndex::degree() const noexcept {
  unsigned d = 0;
  for (auto v : *this) d += v;
  return d;
}

std::uint64_t MultiIndex::weighted_degree(std::span<const std::uint64_t> weights) const {
  if (weights.size() != size_) throw DomainError("weight vector length mismatch");
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < size_; ++i) d += weights[i] * e_[i];
  return d;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

MultiIndex multiindex_add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DomainError("multi-index length mismatch");
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = narrow(unsigned{a[i]} + b[i]);
  return r;
}

namespace {
int lex(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}
}  // namespace

int multiindex_cmp_gradedlex(const MultiIndex& a, const MultiIndex& b,
                             std::span<const std::uint64_t> weights) {
  if (a.size() != b.size()) throw DomainError("multi-index length mismatch");
  auto da = a.weighted_degree(weights), db = b.weighted_degree(weights);
  if (da != db) return da < db ? -1 : 1;
  return lex(a, b);
}

int multiindex_cmp_gradedlex(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DomainError("multi-index length mismatch");
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  return lex(a, b);
}

}  // namespace fgdist
