#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "fgdist/dist.hpp"

namespace fgdist {

// The commutative blocks H_1 << ... << H_k of a geometric formal group, each
// carried as its own Dist(H_i) at level R. Generators and monomial codes are
// global (see LevelShape); block i owns a contiguous range of generators and
// a block-local monomial embeds by a fixed multiplier.
class SplayDescription {
 public:
  SplayDescription(std::vector<FormalGroupLaw> blocks, unsigned level);
  static std::shared_ptr<const SplayDescription> from_law(const FormalGroupLaw& law, unsigned level);

  SplayDescription(const SplayDescription&) = delete;
  SplayDescription& operator=(const SplayDescription&) = delete;

  const LevelShape& shape() const noexcept { return shape_; }
  Prime prime() const noexcept { return shape_.prime(); }
  unsigned level() const noexcept { return shape_.level(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const DistLevel& block(std::size_t b) const { return *blocks_.at(b); }
  const FormalGroupLaw& block_law(std::size_t b) const { return blocks_.at(b)->law(); }
  std::size_t block_of_generator(Generator g) const { return block_of_coord_.at(shape_.coord_of(g)); }
  std::size_t block_of_coordinate(std::size_t c) const { return block_of_coord_.at(c); }
  std::size_t first_coordinate(std::size_t b) const { return first_coord_.at(b); }
  std::size_t first_generator(std::size_t b) const { return first_coord_.at(b) * (level() + 1); }

  std::uint32_t embed(std::size_t b, std::uint32_t local) const { return local * place_.at(b); }
  std::uint32_t local_part(std::size_t b, std::uint32_t global) const {
    return (global / place_.at(b)) % blocks_.at(b)->dimension();
  }
  Combination embed(std::size_t b, const Combination& local) const;
  // The block to which every generator of a nonempty monomial belongs, or
  // block_count() when the monomial mixes blocks or is 1.
  std::size_t pure_block(std::uint32_t monomial) const;

  // F(eta) = eta^p in the block, as global monomials.
  const Combination& frobenius(Generator g) const;
  // Delta of a block-local monomial in the block's multiplicative basis,
  // keyed left * local_dim + right.
  const TensorCombination& block_comul(std::size_t b, std::uint32_t local) const;
  // Delta of a global monomial: product of block coproducts, keyed
  // left * dimension + right.
  TensorCombination comul(std::uint32_t monomial) const;
  // The block antipode of a block-local monomial, multiplicative basis.
  const Combination& block_antipode(std::size_t b, std::uint32_t local) const;

 private:
  LevelShape shape_;
  std::vector<std::shared_ptr<const DistLevel>> blocks_;
  std::vector<std::size_t> block_of_coord_;
  std::vector<std::size_t> first_coord_;
  std::vector<std::uint32_t> place_;
  std::vector<Combination> frobenius_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::map<std::uint32_t, std::shared_ptr<const TensorCombination>>> comul_cache_;
  mutable std::vector<std::map<std::uint32_t, std::shared_ptr<const Combination>>> antipode_cache_;
};

// pi on ordered generator pairs. Canonical tables store only cross-block
// pairs eta >> zeta; tables read from files may store anything, and the
// checks report what is wrong with them.
class PoissonTable {
 public:
  using Key = std::pair<Generator, Generator>;

  explicit PoissonTable(std::shared_ptr<const SplayDescription> splay);

  const SplayDescription& splay() const noexcept { return *splay_; }
  const std::shared_ptr<const SplayDescription>& splay_ptr() const noexcept { return splay_; }

  // Stores the value verbatim (zero removes the entry). Rejects generators or
  // monomials outside the level.
  void set(Generator eta, Generator zeta, Combination value);
  const std::map<Key, Combination>& entries() const noexcept { return entries_; }
  // Stored (eta, zeta), else minus stored (zeta, eta), else 0.
  Combination bracket(Generator eta, Generator zeta) const;

  friend bool operator==(const PoissonTable& a, const PoissonTable& b) { return a.entries_ == b.entries_; }

 private:
  std::shared_ptr<const SplayDescription> splay_;
  std::map<Key, Combination> entries_;
};

// pi(eta, zeta) = iota(eta zeta - zeta eta) for cross-block eta >> zeta.
PoissonTable extract_pi(const DistLevel& dist);
PoissonTable extract_pi(const DistLevel& dist, std::shared_ptr<const SplayDescription> splay);

// Text form of a multiplicative combination as generator words ("x^2 y").
std::string monomial_text(const LevelShape& shape, std::uint32_t monomial);
std::string combination_text(const LevelShape& shape, const Combination& c);

}  // namespace fgdist
