#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgdist/report.hpp"
#include "fgdist/series.hpp"

namespace fgdist {

enum class BlockKind { additive, multiplicative, custom };

std::string to_string(BlockKind kind);
BlockKind block_kind_from_string(const std::string& s);

struct BlockDescriptor {
  std::size_t id = 0;
  BlockKind kind = BlockKind::custom;
  std::vector<std::size_t> coordinate_indices;  // contiguous, ascending

  friend bool operator==(const BlockDescriptor&, const BlockDescriptor&) = default;
};

// Ordered coordinates x_1 << ... << x_n, one rank-2 comultiplication series
// per coordinate, and a partition into contiguous commutative blocks.
// Construction checks shapes only; the group axioms live in validate().
class FormalGroupLaw {
 public:
  FormalGroupLaw(Prime p, unsigned cap, std::vector<std::string> coords,
                 std::vector<TruncatedSeries> comul, std::vector<BlockDescriptor> blocks);

  Prime prime() const noexcept { return p_; }
  unsigned cap() const noexcept { return cap_; }
  const std::vector<std::string>& coords() const noexcept { return vars_.names(); }
  std::size_t dimension() const noexcept { return vars_.coordinates(); }
  const VariableSet& vars() const noexcept { return vars_; }
  const VariableSet& tensor_vars() const noexcept { return tensor_vars_; }
  const TruncatedSeries& comul(std::size_t i) const { return comul_.at(i); }
  const std::vector<TruncatedSeries>& comul() const noexcept { return comul_; }
  const std::vector<BlockDescriptor>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t coord) const;
  // m(x_i) = tau m(x_i) for every coordinate, up to the cap.
  bool commutative() const noexcept { return commutative_; }

  // Same law with the series cut down to a smaller cap.
  FormalGroupLaw truncated(unsigned cap) const;

  friend bool operator==(const FormalGroupLaw& a, const FormalGroupLaw& b);

 private:
  Prime p_;
  unsigned cap_;
  VariableSet vars_;
  VariableSet tensor_vars_;
  std::vector<TruncatedSeries> comul_;
  std::vector<BlockDescriptor> blocks_;
  bool commutative_ = false;
};

// 2 n (p^{R+1} - 1): enough for every pairing coefficient at level R.
unsigned default_cap(Prime p, unsigned level, std::size_t coordinates);

FormalGroupLaw builtin_additive(Prime p, unsigned cap, const std::string& name = "y");
FormalGroupLaw builtin_multiplicative(Prime p, unsigned cap, const std::string& name = "x");
FormalGroupLaw builtin_t2(Prime p, unsigned cap);
// Coordinates are concatenated; on a name clash every coordinate gets its
// block number appended (x1, x2, y3).
FormalGroupLaw product_law(const std::vector<FormalGroupLaw>& laws);

// Counit, coassociativity, block commutativity, block closure and block
// kinds, each up to the cap (or check_cap when smaller).
CheckReport validate(const FormalGroupLaw& law, std::optional<unsigned> check_cap = {});

// i(x) with m(x, i(x)) = 0, solved degree by degree.
std::vector<TruncatedSeries> inverse_series(const FormalGroupLaw& law,
                                            std::optional<unsigned> cap = {});

// The subgroup H_b: block b's coordinates with every other variable set to 0.
FormalGroupLaw restrict_to_block(const FormalGroupLaw& law, std::size_t block);
// Blocks listed in a new order; coordinates follow their blocks.
FormalGroupLaw reorder_blocks(const FormalGroupLaw& law, const std::vector<std::size_t>& order);

}  // namespace fgdist
