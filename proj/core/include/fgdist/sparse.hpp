#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fgdist/field.hpp"

namespace fgdist {

// Sparse F_p-vector, terms sorted by key, no zero coefficients. Ordering by
// key keeps equality a plain vector comparison; presentation order is the
// caller's business.
template <class Key>
class Sparse {
 public:
  using Term = std::pair<Key, std::uint32_t>;

  Sparse() = default;

  static Sparse single(Key k, std::uint32_t c) {
    Sparse s;
    if (c) s.terms_.emplace_back(k, c);
    return s;
  }
  // Combines duplicates and drops zeros.
  static Sparse from_unsorted(std::vector<Term> terms, Prime p) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Sparse s;
    for (const auto& [k, c] : terms) {
      if (!s.terms_.empty() && s.terms_.back().first == k)
        s.terms_.back().second = p.add(s.terms_.back().second, c % p.value());
      else
        s.terms_.emplace_back(k, c % p.value());
      if (s.terms_.back().second == 0) s.terms_.pop_back();
    }
    return s;
  }
  // Caller guarantees sorted, unique, nonzero.
  static Sparse from_sorted(std::vector<Term> terms) {
    Sparse s;
    s.terms_ = std::move(terms);
    return s;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  std::uint32_t coeff(Key k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, Key key) { return t.first < key; });
    return (it != terms_.end() && it->first == k) ? it->second : 0;
  }

  Sparse scaled(std::uint32_t c, Prime p) const {
    Sparse s;
    c %= p.value();
    if (!c) return s;
    s.terms_ = terms_;
    for (auto& t : s.terms_) t.second = p.mul(t.second, c);
    return s;
  }

  // this + c * other
  Sparse axpy(const Sparse& other, std::uint32_t c, Prime p) const {
    c %= p.value();
    if (!c || other.empty()) return *this;
    Sparse s;
    s.terms_.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
      if (j == other.terms_.size() || (i < terms_.size() && terms_[i].first < other.terms_[j].first)) {
        s.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || other.terms_[j].first < terms_[i].first) {
        s.terms_.emplace_back(other.terms_[j].first, p.mul(other.terms_[j].second, c));
        ++j;
      } else {
        auto v = p.add(terms_[i].second, p.mul(other.terms_[j].second, c));
        if (v) s.terms_.emplace_back(terms_[i].first, v);
        ++i;
        ++j;
      }
    }
    return s;
  }

  Sparse plus(const Sparse& o, Prime p) const { return axpy(o, 1, p); }
  Sparse minus(const Sparse& o, Prime p) const { return axpy(o, p.value() - 1, p); }

  friend bool operator==(const Sparse&, const Sparse&) = default;

 private:
  std::vector<Term> terms_;
};

// Hash accumulator for building Sparse values term by term.
template <class Key>
class SparseBuilder {
 public:
  explicit SparseBuilder(Prime p) : p_(p) {}

  void add(Key k, std::uint32_t c) {
    if (!c) return;
    auto& slot = acc_[k];
    slot = p_.add(slot, c);
  }
  void add(const Sparse<Key>& s, std::uint32_t c) {
    if (!c) return;
    for (const auto& [k, v] : s.terms()) add(k, p_.mul(v, c));
  }
  Sparse<Key> finish() {
    std::vector<typename Sparse<Key>::Term> terms;
    terms.reserve(acc_.size());
    for (const auto& [k, v] : acc_)
      if (v) terms.emplace_back(k, v);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    acc_.clear();
    return Sparse<Key>::from_sorted(std::move(terms));
  }

 private:
  Prime p_;
  std::unordered_map<Key, std::uint32_t> acc_;
};

// Combination of basis elements indexed inside one level.
using Combination = Sparse<std::uint32_t>;
// Combination of pairs (a, b), keyed a * dimension + b.
using TensorCombination = Sparse<std::uint64_t>;

}  // namespace fgdist
