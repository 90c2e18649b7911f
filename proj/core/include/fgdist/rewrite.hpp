#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "fgdist/report.hpp"
#include "fgdist/splay.hpp"

namespace fgdist {

using WordTerm = std::pair<Word, std::uint32_t>;

// Rules on the free algebra over the generators:
//   f_eta:        eta^p      -> F(eta)
//   g_{eta,zeta}: eta zeta   -> zeta eta + pi(eta, zeta)   (eta >> zeta)
// with pi = 0 inside a block. Construction rejects rules that fail to lower
// the measure (weighted degree, inversions); that is exactly strong
// filtration for pi and the degree drop of F.
class RewriteSystem {
 public:
  RewriteSystem(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table);

  const SplayDescription& splay() const noexcept { return *splay_; }
  const std::shared_ptr<const SplayDescription>& splay_ptr() const noexcept { return splay_; }
  const LevelShape& shape() const noexcept { return splay_->shape(); }
  Prime prime() const noexcept { return shape().prime(); }

  const Combination& frobenius(Generator g) const { return splay_->frobenius(g); }
  // Right-hand side bracket of g_{eta,zeta} for eta >> zeta; 0 inside a block.
  const Combination& straighten(Generator eta, Generator zeta) const;

  int compare(const Word& a, const Word& b) const { return shape().compare_words(a, b); }

  Combination normal_form(const Word& w) const;
  Combination normal_form(const std::vector<WordTerm>& elem) const;
  // NF(u v) for normal monomials and their combinations.
  Combination multiply(std::uint32_t u, std::uint32_t v) const;
  Combination multiply(const Combination& a, const Combination& b) const;
  // NF(u g), memoized.
  const Combination& multiply_generator(std::uint32_t u, Generator g) const;

  // Reference engine: one leftmost-redex step, nullopt on a normal word.
  std::optional<std::vector<WordTerm>> rewrite_step(const Word& w) const;
  // Repeats rewrite_step, asserting that every produced word has a strictly
  // smaller measure than the word it came from.
  Combination naive_normal_form(const Word& w) const;

  static std::pair<std::uint64_t, std::uint64_t> measure(const LevelShape& shape, const Word& w);

 private:
  std::shared_ptr<const SplayDescription> splay_;
  std::vector<Combination> straighten_;  // [eta * gens + zeta]
  mutable std::shared_mutex memo_mutex_;
  mutable std::vector<std::shared_ptr<const Combination>> memo_;
};

struct Overlap {
  std::string kind;  // "S1" zeta eta^p, "S2" eta^p zeta, "S3" triple, "power" eta^{p+k}
  Word word;
  Combination residue;
};

struct SPolynomialReport {
  std::vector<Overlap> overlaps;  // sorted by overlap word

  bool all_zero() const;
  std::string to_text(const LevelShape& shape) const;
  CheckReport to_check() const;
};

SPolynomialReport s_polynomial_report(const RewriteSystem& sys);
// Codes of all normal monomials, ascending in the word order.
std::vector<std::uint32_t> enumerate_pbw_basis(const RewriteSystem& sys);

std::string word_text(const LevelShape& shape, const Word& w);

}  // namespace fgdist
