#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fgdist/field.hpp"
#include "fgdist/multi_index.hpp"

namespace fgdist {

// Coordinate names plus a tensor rank. A rank-r set has r copies of the
// coordinates laid out copy-major: variable (c, j) sits at c*n + j.
class VariableSet {
 public:
  explicit VariableSet(std::vector<std::string> names, unsigned rank = 1);

  const std::vector<std::string>& names() const noexcept { return names_; }
  unsigned rank() const noexcept { return rank_; }
  std::size_t coordinates() const noexcept { return names_.size(); }
  std::size_t size() const noexcept { return names_.size() * rank_; }
  std::size_t index(unsigned copy, std::size_t coord) const noexcept {
    return copy * names_.size() + coord;
  }
  std::string variable_name(std::size_t i) const;
  VariableSet with_rank(unsigned rank) const { return VariableSet(names_, rank); }

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> names_;
  unsigned rank_;
};

class TruncatedSeries {
 public:
  using Term = std::pair<MultiIndex, std::uint32_t>;

  TruncatedSeries(VariableSet vars, unsigned cap, Prime p);

  static TruncatedSeries constant(VariableSet vars, unsigned cap, Prime p, std::int64_t c);
  static TruncatedSeries variable(VariableSet vars, unsigned cap, Prime p, std::size_t i);
  static TruncatedSeries monomial(VariableSet vars, unsigned cap, Prime p, const MultiIndex& m,
                                  std::int64_t c = 1);
  // Sums duplicate exponents and silently drops terms above the cap.
  static TruncatedSeries from_terms(VariableSet vars, unsigned cap, Prime p,
                                    const std::vector<Term>& terms);

  const VariableSet& vars() const noexcept { return vars_; }
  unsigned cap() const noexcept { return cap_; }
  Prime prime() const noexcept { return p_; }
  // Ascending graded-lex, no zero coefficients.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned order() const;  // lowest total degree present; 0 for the zero series

  // Throws TruncationError when |J| exceeds the cap.
  FieldElement coefficient(const MultiIndex& j) const;
  std::uint32_t residue(const MultiIndex& j) const;
  std::uint32_t constant_term() const;

  TruncatedSeries truncated(unsigned cap) const;
  // Keeps the terms satisfying the predicate.
  TruncatedSeries filtered(const std::function<bool(const MultiIndex&)>& keep) const;
  // Moves variable i to position map[i] of a new variable set.
  TruncatedSeries relabeled(const VariableSet& target, const std::vector<std::size_t>& map) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(std::uint32_t c) const;

  std::string to_string() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  void check_compatible(const TruncatedSeries& o) const;

  VariableSet vars_;
  unsigned cap_;
  Prime p_;
  std::vector<Term> terms_;
};

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_pow(const TruncatedSeries& f, unsigned k);

// f(images). Every image lives in one target variable set with zero constant
// term; the result is exact up to the target cap, which may not exceed f's.
TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images);

// Degree of a term restricted to one tensor copy.
unsigned copy_degree(const MultiIndex& m, const VariableSet& vars, unsigned copy);

}  // namespace fgdist
