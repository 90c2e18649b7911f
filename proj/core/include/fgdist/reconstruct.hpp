#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fgdist/poisson.hpp"

namespace fgdist {

// U = T / (fg - gf - pi(f, g)) in its PBW basis. Monomial codes are the
// splay's global codes; structure(u, v) is NF(u v).
class ReconstructedAlgebra {
 public:
  // Takes the pieces as they are; build_U is the checked way in.
  ReconstructedAlgebra(std::shared_ptr<const SplayDescription> splay, PoissonTable table,
                       std::vector<std::uint32_t> basis, std::vector<Combination> structure,
                       std::vector<TensorCombination> comul);

  const SplayDescription& splay() const noexcept { return *splay_; }
  const std::shared_ptr<const SplayDescription>& splay_ptr() const noexcept { return splay_; }
  const LevelShape& shape() const noexcept { return splay_->shape(); }
  Prime prime() const noexcept { return shape().prime(); }
  const PoissonTable& table() const noexcept { return table_; }
  std::uint32_t dimension() const noexcept { return shape().dimension(); }
  // Ascending in the word order; the unit comes first.
  const std::vector<std::uint32_t>& basis() const noexcept { return basis_; }

  const Combination& product(std::uint32_t u, std::uint32_t v) const {
    return structure_.at(static_cast<std::size_t>(u) * dimension() + v);
  }
  Combination multiply(const Combination& a, const Combination& b) const;
  // Multiplicative-basis coproduct of a monomial, keyed left * dim + right.
  const TensorCombination& comul(std::uint32_t u) const { return comul_.at(u); }
  TensorCombination comul(const Combination& a) const;
  TensorCombination tensor_multiply(const TensorCombination& a, const TensorCombination& b) const;
  std::uint32_t counit(const Combination& a) const { return a.coeff(0); }

  // Replaces one structure constant; used to build corrupted algebras.
  void set_product(std::uint32_t u, std::uint32_t v, Combination value);

 private:
  std::shared_ptr<const SplayDescription> splay_;
  PoissonTable table_;
  std::vector<std::uint32_t> basis_;
  std::vector<Combination> structure_;
  std::vector<TensorCombination> comul_;
};

struct BuildOptions {
  // Off only for deliberately broken inputs in tests.
  bool check_axioms = true;
};

// Throws AxiomError naming the first failed Poisson axiom with its witness.
ReconstructedAlgebra build_U(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table,
                             BuildOptions options = {});

// Divided-power coproduct Delta(delta_{x^J}) = sum_{A+B=J} delta_{x^A} (x) delta_{x^B}
// on an additive code, keyed left * dim + right.
TensorCombination dvps_additive(const LevelShape& shape, std::uint32_t idx);
// Splay-level basis change: a global monomial to additive codes and back,
// block by block.
Combination mult_to_additive(const SplayDescription& splay, std::uint32_t monomial);
Combination additive_to_mult(const SplayDescription& splay, std::uint32_t idx);

// Delta(uv) = Delta(u) Delta(v) on all basis pairs, coassociativity, counit,
// and agreement with the divided-power coproduct through the basis change.
CheckReport dvps_verify(const ReconstructedAlgebra& u);

// Every structure constant against additive_to_mult(dist_mul(., .)).
CheckReport compare_with_oracle(const ReconstructedAlgebra& u, const DistLevel& dist);

// Swaps blocks i and i + 1. The transported table pi' is read off U in the
// swapped PBW basis, and Phi (the block antipodes on the two blocks, which
// then trade places) must satisfy Phi(pi(eta, zeta)) = pi~'(Phi zeta, Phi eta)
// on every cross pair of the two blocks. omit_antipode replaces the antipode
// on that block by the identity.
CheckReport swap_order_equivalence(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table,
                                   std::size_t i, std::optional<std::size_t> omit_antipode = {});

}  // namespace fgdist
