#include "fgdist/formal_group.hpp"

#include <algorithm>
#include <map>

#include "fgdist/error.hpp"

namespace fgdist {

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::additive: return "additive";
    case BlockKind::multiplicative: return "multiplicative";
    case BlockKind::custom: return "custom";
  }
  return "custom";
}

BlockKind block_kind_from_string(const std::string& s) {
  if (s == "additive") return BlockKind::additive;
  if (s == "multiplicative") return BlockKind::multiplicative;
  if (s == "custom") return BlockKind::custom;
  throw ParseError("unknown block kind '" + s + "'");
}

namespace {

// tau: swap the two tensor copies.
TruncatedSeries swapped(const TruncatedSeries& f) {
  const auto& v = f.vars();
  std::vector<std::size_t> map(v.size());
  for (std::size_t j = 0; j < v.coordinates(); ++j) {
    map[v.index(0, j)] = v.index(1, j);
    map[v.index(1, j)] = v.index(0, j);
  }
  return f.relabeled(v, map);
}

std::string monomial_text(const MultiIndex& m, const VariableSet& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars.variable_name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

// First monomial where f and g differ, or nullopt.
std::optional<std::string> first_difference(const TruncatedSeries& f, const TruncatedSeries& g) {
  auto d = f - g;
  if (d.is_zero()) return std::nullopt;
  return monomial_text(d.terms().front().first, d.vars());
}

TruncatedSeries linear_sum(const VariableSet& tv, unsigned cap, Prime p, std::size_t j) {
  return TruncatedSeries::variable(tv, cap, p, tv.index(0, j)) +
         TruncatedSeries::variable(tv, cap, p, tv.index(1, j));
}

}  // namespace

FormalGroupLaw::FormalGroupLaw(Prime p, unsigned cap, std::vector<std::string> coords,
                               std::vector<TruncatedSeries> comul,
                               std::vector<BlockDescriptor> blocks)
    : p_(p),
      cap_(cap),
      vars_(std::move(coords), 1),
      tensor_vars_(vars_.names(), 2),
      comul_(std::move(comul)),
      blocks_(std::move(blocks)) {
  const std::size_t n = vars_.coordinates();
  if (n == 0) throw DomainError("a formal group law needs at least one coordinate");
  if (comul_.size() != n) throw DomainError("one comultiplication series per coordinate required");
  for (const auto& s : comul_) {
    if (!(s.vars() == tensor_vars_)) throw DomainError("comultiplication over the wrong variables");
    if (s.cap() != cap_ || !(s.prime() == p_))
      throw DomainError("comultiplication series with mismatched cap or characteristic");
  }
  std::size_t next = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& blk = blocks_[b];
    blk.id = b;
    if (blk.coordinate_indices.empty()) throw DomainError("empty block");
    for (std::size_t c : blk.coordinate_indices) {
      if (c != next) throw DomainError("blocks must partition the coordinates contiguously and in order");
      ++next;
    }
  }
  if (next != n) throw DomainError("blocks do not cover every coordinate");

  commutative_ = std::all_of(comul_.begin(), comul_.end(),
                             [](const TruncatedSeries& s) { return swapped(s) == s; });
}

std::size_t FormalGroupLaw::block_of(std::size_t coord) const {
  for (const auto& b : blocks_)
    if (coord >= b.coordinate_indices.front() && coord <= b.coordinate_indices.back()) return b.id;
  throw DomainError("coordinate index out of range");
}

FormalGroupLaw FormalGroupLaw::truncated(unsigned cap) const {
  std::vector<TruncatedSeries> c;
  for (const auto& s : comul_) c.push_back(s.truncated(cap));
  return FormalGroupLaw(p_, cap, coords(), std::move(c), blocks_);
}

bool operator==(const FormalGroupLaw& a, const FormalGroupLaw& b) {
  return a.p_ == b.p_ && a.cap_ == b.cap_ && a.vars_ == b.vars_ && a.comul_ == b.comul_ &&
         a.blocks_ == b.blocks_;
}

unsigned default_cap(Prime p, unsigned level, std::size_t coordinates) {
  return static_cast<unsigned>(2 * coordinates * (ipow(p.value(), level + 1) - 1));
}

FormalGroupLaw builtin_additive(Prime p, unsigned cap, const std::string& name) {
  VariableSet tv({name}, 2);
  return FormalGroupLaw(p, cap, {name}, {linear_sum(tv, cap, p, 0)},
                        {{0, BlockKind::additive, {0}}});
}

FormalGroupLaw builtin_multiplicative(Prime p, unsigned cap, const std::string& name) {
  VariableSet tv({name}, 2);
  auto m = linear_sum(tv, cap, p, 0) + TruncatedSeries::monomial(tv, cap, p, MultiIndex{1, 1});
  return FormalGroupLaw(p, cap, {name}, {m}, {{0, BlockKind::multiplicative, {0}}});
}

FormalGroupLaw builtin_t2(Prime p, unsigned cap) {
  // variables: x' y' x'' y''
  VariableSet tv({"x", "y"}, 2);
  auto mx = linear_sum(tv, cap, p, 0) + TruncatedSeries::monomial(tv, cap, p, MultiIndex{1, 0, 1, 0});
  // (1+x') y'' + y' (1 - x'' + x''^2 - ...)
  std::vector<TruncatedSeries::Term> ty;
  ty.emplace_back(MultiIndex{0, 0, 0, 1}, 1);
  ty.emplace_back(MultiIndex{1, 0, 0, 1}, 1);
  for (unsigned k = 0; k + 1 <= cap; ++k)
    ty.emplace_back(MultiIndex{0, 1, k, 0}, p.reduce(k % 2 ? -1 : 1));
  auto my = TruncatedSeries::from_terms(tv, cap, p, ty);
  return FormalGroupLaw(p, cap, {"x", "y"}, {mx, my},
                        {{0, BlockKind::multiplicative, {0}}, {1, BlockKind::additive, {1}}});
}

FormalGroupLaw product_law(const std::vector<FormalGroupLaw>& laws) {
  if (laws.empty()) throw DomainError("product of no laws");
  const Prime p = laws.front().prime();
  const unsigned cap = laws.front().cap();
  std::vector<std::string> names;
  std::vector<std::size_t> block_number;
  std::size_t nblocks = 0;
  for (const auto& l : laws) {
    if (!(l.prime() == p) || l.cap() != cap) throw DomainError("product of laws with mismatched p or cap");
    for (std::size_t j = 0; j < l.dimension(); ++j) {
      names.push_back(l.coords()[j]);
      block_number.push_back(nblocks + l.block_of(j));
    }
    nblocks += l.blocks().size();
  }
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    for (std::size_t j = 0; j < names.size(); ++j) names[j] += std::to_string(block_number[j] + 1);

  const std::size_t n = names.size();
  VariableSet tv(names, 2);
  std::vector<TruncatedSeries> comul;
  std::vector<BlockDescriptor> blocks;
  std::size_t offset = 0;
  for (const auto& l : laws) {
    const std::size_t k = l.dimension();
    std::vector<std::size_t> map(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
      map[j] = offset + j;
      map[k + j] = n + offset + j;
    }
    for (const auto& s : l.comul()) comul.push_back(s.relabeled(tv, map));
    for (const auto& b : l.blocks()) {
      BlockDescriptor nb{0, b.kind, {}};
      for (std::size_t c : b.coordinate_indices) nb.coordinate_indices.push_back(offset + c);
      blocks.push_back(nb);
    }
    offset += k;
  }
  return FormalGroupLaw(p, cap, names, std::move(comul), std::move(blocks));
}

CheckReport validate(const FormalGroupLaw& law, std::optional<unsigned> check_cap) {
  CheckReport report;
  const unsigned cap = std::min(law.cap(), check_cap.value_or(law.cap()));
  const Prime p = law.prime();
  const std::size_t n = law.dimension();
  const VariableSet& tv = law.tensor_vars();
  std::vector<TruncatedSeries> m;
  for (const auto& s : law.comul()) m.push_back(s.truncated(cap));

  // counit
  {
    std::optional<std::string> bad;
    for (std::size_t i = 0; i < n && !bad; ++i) {
      auto left = m[i].filtered([&](const MultiIndex& e) { return copy_degree(e, tv, 1) == 0; });
      auto right = m[i].filtered([&](const MultiIndex& e) { return copy_degree(e, tv, 0) == 0; });
      auto xl = TruncatedSeries::variable(tv, cap, p, tv.index(0, i));
      auto xr = TruncatedSeries::variable(tv, cap, p, tv.index(1, i));
      if (auto d = first_difference(left, xl)) bad = "m(" + law.coords()[i] + ") at " + *d;
      else if (auto d2 = first_difference(right, xr)) bad = "m(" + law.coords()[i] + ") at " + *d2;
    }
    if (bad) report.fail("counit", *bad);
    else report.pass("counit");
  }

  // coassociativity: (m x 1) m = (1 x m) m in three tensor copies
  {
    VariableSet v3(law.coords(), 3);
    std::vector<std::size_t> to01(2 * n), to12(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      to01[j] = j;
      to12[j] = j + n;
    }
    std::vector<TruncatedSeries> lhs_images, rhs_images;
    for (std::size_t j = 0; j < n; ++j) lhs_images.push_back(m[j].relabeled(v3, to01));
    for (std::size_t j = 0; j < n; ++j)
      lhs_images.push_back(TruncatedSeries::variable(v3, cap, p, v3.index(2, j)));
    for (std::size_t j = 0; j < n; ++j)
      rhs_images.push_back(TruncatedSeries::variable(v3, cap, p, v3.index(0, j)));
    for (std::size_t j = 0; j < n; ++j) rhs_images.push_back(m[j].relabeled(v3, to12));
    std::optional<std::string> bad;
    for (std::size_t i = 0; i < n && !bad; ++i) {
      auto lhs = substitute(m[i], lhs_images);
      auto rhs = substitute(m[i], rhs_images);
      if (auto d = first_difference(lhs, rhs)) bad = "m(" + law.coords()[i] + ") at " + *d;
    }
    if (bad) report.fail("coassociativity", *bad);
    else report.pass("coassociativity");
  }

  auto only_block = [&](const BlockDescriptor& b) {
    return [&tv, &b, n](const MultiIndex& e) {
      for (std::size_t j = 0; j < n; ++j) {
        bool inside = j >= b.coordinate_indices.front() && j <= b.coordinate_indices.back();
        if (!inside && (e[tv.index(0, j)] || e[tv.index(1, j)])) return false;
      }
      return true;
    };
  };

  // block commutativity
  {
    std::optional<std::string> bad;
    for (const auto& b : law.blocks()) {
      for (std::size_t i : b.coordinate_indices) {
        auto f = m[i].filtered(only_block(b));
        if (auto d = first_difference(f, swapped(f))) {
          bad = "block " + std::to_string(b.id) + ", m(" + law.coords()[i] + ") at " + *d;
          break;
        }
      }
      if (bad) break;
    }
    if (bad) report.fail("block commutativity", *bad);
    else report.pass("block commutativity");
  }

  // block closure: each block is a subgroup
  {
    std::optional<std::string> bad;
    for (const auto& b : law.blocks()) {
      for (std::size_t j = 0; j < n && !bad; ++j) {
        if (law.block_of(j) == b.id) continue;
        auto f = m[j].filtered(only_block(b));
        if (!f.is_zero())
          bad = "block " + std::to_string(b.id) + " not closed: m(" + law.coords()[j] + ") has " +
                monomial_text(f.terms().front().first, tv);
      }
      if (bad) break;
    }
    if (bad) report.fail("block closure", *bad);
    else report.pass("block closure");
  }

  // declared block kinds
  {
    std::optional<std::string> bad;
    for (const auto& b : law.blocks()) {
      if (b.kind == BlockKind::custom) continue;
      if (b.kind == BlockKind::multiplicative && b.coordinate_indices.size() != 1) {
        bad = "multiplicative block " + std::to_string(b.id) + " has more than one coordinate";
        break;
      }
      for (std::size_t i : b.coordinate_indices) {
        auto f = m[i].filtered(only_block(b));
        auto expect = linear_sum(tv, cap, p, i);
        if (b.kind == BlockKind::multiplicative) {
          MultiIndex e(2 * n);
          e[tv.index(0, i)] = 1;
          e[tv.index(1, i)] = 1;
          expect = expect + TruncatedSeries::monomial(tv, cap, p, e);
        }
        if (auto d = first_difference(f, expect)) {
          bad = to_string(b.kind) + " block " + std::to_string(b.id) + ", m(" + law.coords()[i] +
                ") at " + *d;
          break;
        }
      }
      if (bad) break;
    }
    if (bad) report.fail("block kind", *bad);
    else report.pass("block kind");
  }

  report.pass("whole-law commutativity", law.commutative() ? "commutative" : "non-commutative");
  return report;
}

std::vector<TruncatedSeries> inverse_series(const FormalGroupLaw& law, std::optional<unsigned> cap_opt) {
  const unsigned cap = std::min(law.cap(), cap_opt.value_or(law.cap()));
  const Prime p = law.prime();
  const std::size_t n = law.dimension();
  const VariableSet& v1 = law.vars();
  const VariableSet& tv = law.tensor_vars();

  // h = m - x' - x'': the part of degree >= 2
  std::vector<TruncatedSeries> h;
  for (std::size_t j = 0; j < n; ++j)
    h.push_back(law.comul(j).truncated(cap) - linear_sum(tv, cap, p, j));

  std::vector<TruncatedSeries> inv;
  for (std::size_t j = 0; j < n; ++j)
    inv.push_back(-TruncatedSeries::variable(v1, std::min(cap, 1u), p, j));

  for (unsigned d = 2; d <= cap; ++d) {
    std::vector<TruncatedSeries> images;
    for (std::size_t j = 0; j < n; ++j) images.push_back(TruncatedSeries::variable(v1, d, p, j));
    for (std::size_t j = 0; j < n; ++j) images.push_back(TruncatedSeries::from_terms(v1, d, p, inv[j].terms()));
    std::vector<TruncatedSeries> next;
    for (std::size_t j = 0; j < n; ++j)
      next.push_back(-TruncatedSeries::variable(v1, d, p, j) - substitute(h[j].truncated(d), images));
    inv = std::move(next);
  }
  return inv;
}

FormalGroupLaw restrict_to_block(const FormalGroupLaw& law, std::size_t block) {
  const auto& b = law.blocks().at(block);
  const std::size_t n = law.dimension();
  const std::size_t first = b.coordinate_indices.front();
  const std::size_t k = b.coordinate_indices.size();
  std::vector<std::string> names;
  for (std::size_t c : b.coordinate_indices) names.push_back(law.coords()[c]);
  VariableSet sub(names, 2);
  std::vector<std::size_t> map(2 * n, 0);
  for (std::size_t c : b.coordinate_indices) {
    map[c] = c - first;
    map[n + c] = k + c - first;
  }
  const auto& tv = law.tensor_vars();
  auto inside = [&](const MultiIndex& e) {
    for (std::size_t j = 0; j < n; ++j)
      if ((j < first || j >= first + k) && (e[tv.index(0, j)] || e[tv.index(1, j)])) return false;
    return true;
  };
  std::vector<TruncatedSeries> comul;
  for (std::size_t c : b.coordinate_indices) comul.push_back(law.comul(c).filtered(inside).relabeled(sub, map));
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return FormalGroupLaw(law.prime(), law.cap(), names, std::move(comul), {{0, b.kind, idx}});
}

FormalGroupLaw reorder_blocks(const FormalGroupLaw& law, const std::vector<std::size_t>& order) {
  const std::size_t n = law.dimension();
  if (order.size() != law.blocks().size()) throw DomainError("block order has the wrong length");
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw DomainError("block order is not a permutation");

  std::vector<std::size_t> new_pos(n);
  std::vector<std::string> names;
  std::vector<BlockDescriptor> blocks;
  std::size_t next = 0;
  for (std::size_t b : order) {
    BlockDescriptor nb{0, law.blocks()[b].kind, {}};
    for (std::size_t c : law.blocks()[b].coordinate_indices) {
      new_pos[c] = next;
      names.push_back(law.coords()[c]);
      nb.coordinate_indices.push_back(next++);
    }
    blocks.push_back(nb);
  }
  VariableSet tv(names, 2);
  std::vector<std::size_t> map(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    map[j] = new_pos[j];
    map[n + j] = n + new_pos[j];
  }
  std::vector<TruncatedSeries> comul(n, TruncatedSeries(tv, law.cap(), law.prime()));
  for (std::size_t j = 0; j < n; ++j) comul[new_pos[j]] = law.comul(j).relabeled(tv, map);
  return FormalGroupLaw(law.prime(), law.cap(), names, std::move(comul), std::move(blocks));
}

}  // namespace fgdist
