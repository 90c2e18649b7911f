#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fgdist/formal_group.hpp"
#include "fgdist/level.hpp"
#include "fgdist/sparse.hpp"

namespace fgdist {

// Sparse combination of additive basis elements delta_{x^J}, tagged with the
// level it belongs to.
struct Distribution {
  std::uint64_t level_id = 0;
  Combination terms;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

// Element of Dist(G) (x) Dist(G) in the additive basis.
struct DistTensor {
  std::uint64_t level_id = 0;
  TensorCombination terms;

  friend bool operator==(const DistTensor&, const DistTensor&) = default;
};

// Dist(G) truncated at level R. Products come from the dual pairing: the
// coefficient of delta_K in delta_I * delta_J is the coefficient of
// x'^I x''^J in prod_j m(x_j)^{K_j}. Those rank-2 expansions and everything
// derived from them are memoized behind reader/writer locks; every fill is a
// pure function of its key, so concurrent callers see identical results.
class DistLevel {
 public:
  DistLevel(FormalGroupLaw law, unsigned level);
  DistLevel(const DistLevel&) = delete;
  DistLevel& operator=(const DistLevel&) = delete;

  const FormalGroupLaw& law() const noexcept { return law_; }
  const LevelShape& shape() const noexcept { return shape_; }
  unsigned level() const noexcept { return shape_.level(); }
  Prime prime() const noexcept { return law_.prime(); }
  std::uint64_t id() const noexcept { return id_; }
  std::uint32_t dimension() const noexcept { return shape_.dimension(); }

  Distribution zero() const { return {id_, {}}; }
  Distribution unit() const { return basis_element(0); }
  Distribution basis_element(std::uint32_t idx, std::uint32_t coeff = 1) const;
  Distribution basis(const MultiIndex& j, std::int64_t coeff = 1) const;
  Distribution generator(std::size_t coord, unsigned power) const;
  Distribution make(Combination terms) const { return {id_, std::move(terms)}; }

  // delta_{x^J}(x^K)
  FieldElement pair(const MultiIndex& j, const MultiIndex& k) const;

  Distribution add(const Distribution& a, const Distribution& b) const;
  Distribution sub(const Distribution& a, const Distribution& b) const;
  Distribution scale(const Distribution& a, std::int64_t c) const;
  Distribution mul(const Distribution& a, const Distribution& b) const;
  Distribution commutator(const Distribution& a, const Distribution& b) const;
  DistTensor comul(const Distribution& a) const;
  DistTensor tensor_mul(const DistTensor& a, const DistTensor& b) const;
  Distribution antipode(const Distribution& a) const;
  std::uint32_t counit(const Distribution& a) const;
  unsigned filtration_degree(const Distribution& a) const;

  // delta_I * delta_J for basis indices; throws TruncationError when the law's
  // cap cannot resolve the product.
  const Combination& basis_product(std::uint32_t i, std::uint32_t j) const;

  // The ordered product prod_j prod_t delta_{x_j^{p^t}}^{J_{j,t}}.
  const Distribution& mult_to_additive(std::uint32_t monomial) const;
  Distribution mult_to_additive(const Combination& monomials) const;
  // Triangular back-substitution; exact inverse of mult_to_additive.
  Combination additive_to_mult(const Distribution& a) const;

  // eta^p for eta = delta_{x_j^{p^t}}.
  Distribution frobenius_power(Generator g) const;
  Distribution canonical_commutator(Generator eta, Generator zeta) const;

  std::string to_text(const Distribution& a) const;
  std::string to_text(const DistTensor& a) const;
  std::string basis_text(std::uint32_t idx) const;

 private:
  // prod_j m(x_j)^{K_j}, box-truncated, keyed left * dimension + right
  const TensorCombination& expansion(std::uint32_t k) const;
  // prod_j i(x)_j^{K_j}, box-truncated
  const Combination& inverse_power(std::uint32_t k) const;
  void ensure_inverse() const;
  void check_level(const Distribution& a) const;

  FormalGroupLaw law_;
  LevelShape shape_;
  std::uint64_t id_;
  std::vector<std::uint32_t> by_degree_;  // additive indices sorted by |J|
  std::vector<std::uint16_t> degree_;

  // box-truncated m(x_j) terms as (left index, right index, coeff)
  struct ComulTerm {
    std::uint32_t left, right, coeff;
  };
  std::vector<std::vector<ComulTerm>> comul_terms_;

  mutable std::shared_mutex expansion_mutex_;
  mutable std::vector<std::shared_ptr<const TensorCombination>> expansions_;

  mutable std::shared_mutex product_mutex_;
  mutable std::unordered_map<std::uint64_t, std::shared_ptr<const Combination>> products_;

  mutable std::shared_mutex monomial_mutex_;
  mutable std::vector<std::shared_ptr<const Distribution>> monomials_;

  mutable std::once_flag inverse_once_;
  mutable std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> inverse_terms_;
  mutable unsigned inverse_cap_ = 0;
  mutable std::shared_mutex inverse_mutex_;
  mutable std::vector<std::shared_ptr<const Combination>> inverse_powers_;
};

}  // namespace fgdist
