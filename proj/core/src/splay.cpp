#include "fgdist/splay.hpp"

#include <algorithm>
#include <tuple>

#include "fgdist/error.hpp"

namespace fgdist {

namespace {

std::vector<std::string> all_names(const std::vector<FormalGroupLaw>& blocks) {
  std::vector<std::string> names;
  for (const auto& b : blocks)
    for (const auto& n : b.coords()) names.push_back(n);
  return names;
}

Prime first_prime(const std::vector<FormalGroupLaw>& blocks) {
  if (blocks.empty()) throw DomainError("a splay needs at least one block");
  return blocks.front().prime();
}

}  // namespace

SplayDescription::SplayDescription(std::vector<FormalGroupLaw> blocks, unsigned level)
    : shape_(first_prime(blocks), all_names(blocks), level) {
  std::size_t coord = 0;
  std::uint32_t place = 1;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto& law = blocks[b];
    if (!(law.prime() == prime())) throw DomainError("splay blocks over different characteristics");
    if (law.blocks().size() != 1) throw DomainError("each splay block must be a single block law");
    if (!law.commutative())
      throw AxiomError("block commutativity", "block " + std::to_string(b) + " is not commutative");
    first_coord_.push_back(coord);
    place_.push_back(place);
    auto dist = std::make_shared<const DistLevel>(std::move(law), level);
    for (std::size_t j = 0; j < dist->shape().coordinates(); ++j) block_of_coord_.push_back(b);
    coord += dist->shape().coordinates();
    place *= dist->dimension();
    blocks_.push_back(std::move(dist));
  }
  comul_cache_.resize(blocks_.size());
  antipode_cache_.resize(blocks_.size());

  for (Generator g = 0; g < shape_.generator_count(); ++g) {
    const std::size_t b = block_of_generator(g);
    const auto& dist = *blocks_[b];
    const Generator local = static_cast<Generator>(g - first_generator(b));
    auto f = dist.additive_to_mult(dist.frobenius_power(local));
    frobenius_.push_back(embed(b, f));
  }
}

std::shared_ptr<const SplayDescription> SplayDescription::from_law(const FormalGroupLaw& law, unsigned level) {
  std::vector<FormalGroupLaw> blocks;
  for (std::size_t b = 0; b < law.blocks().size(); ++b) blocks.push_back(restrict_to_block(law, b));
  return std::make_shared<const SplayDescription>(std::move(blocks), level);
}

Combination SplayDescription::embed(std::size_t b, const Combination& local) const {
  std::vector<Combination::Term> terms;
  for (const auto& [u, c] : local.terms()) terms.emplace_back(embed(b, u), c);
  return Combination::from_sorted(std::move(terms));  // scaling by place_ keeps the order
}

std::size_t SplayDescription::pure_block(std::uint32_t monomial) const {
  std::size_t found = blocks_.size();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (local_part(b, monomial) == 0) continue;
    if (found != blocks_.size()) return blocks_.size();
    found = b;
  }
  return found;
}

const Combination& SplayDescription::frobenius(Generator g) const { return frobenius_.at(g); }

const TensorCombination& SplayDescription::block_comul(std::size_t b, std::uint32_t local) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = comul_cache_.at(b).find(local);
    if (it != comul_cache_[b].end()) return *it->second;
  }
  const auto& dist = *blocks_[b];
  const std::uint64_t ldim = dist.dimension();
  const Prime p = prime();
  const auto additive = dist.comul(dist.mult_to_additive(local));
  // both sides back to the multiplicative basis
  std::map<std::uint32_t, Combination> to_mult;
  auto mult_of = [&](std::uint32_t a) -> const Combination& {
    auto it = to_mult.find(a);
    if (it == to_mult.end()) it = to_mult.emplace(a, dist.additive_to_mult(dist.basis_element(a))).first;
    return it->second;
  };
  SparseBuilder<std::uint64_t> acc(p);
  for (const auto& [key, c] : additive.terms.terms()) {
    const auto& left = mult_of(static_cast<std::uint32_t>(key / ldim));
    const auto& right = mult_of(static_cast<std::uint32_t>(key % ldim));
    for (const auto& [l, cl] : left.terms())
      for (const auto& [r, cr] : right.terms()) acc.add(l * ldim + r, p.mul(c, p.mul(cl, cr)));
  }
  auto built = std::make_shared<const TensorCombination>(acc.finish());
  std::lock_guard lock(cache_mutex_);
  auto [it, inserted] = comul_cache_[b].emplace(local, std::move(built));
  return *it->second;
}

TensorCombination SplayDescription::comul(std::uint32_t monomial) const {
  const Prime p = prime();
  const std::uint64_t dim = shape_.dimension();
  // running product over blocks of (left, right, coeff) with global codes
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> acc{{0, 0, 1}};
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::uint32_t local = local_part(b, monomial);
    if (local == 0) continue;  // Delta(1) = 1 (x) 1
    const std::uint64_t ldim = blocks_[b]->dimension();
    const auto& part = block_comul(b, local);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> next;
    for (const auto& [l0, r0, c0] : acc)
      for (const auto& [key, c] : part.terms())
        next.emplace_back(l0 + embed(b, static_cast<std::uint32_t>(key / ldim)),
                          r0 + embed(b, static_cast<std::uint32_t>(key % ldim)), p.mul(c0, c));
    acc = std::move(next);
  }
  std::vector<TensorCombination::Term> terms;
  for (const auto& [l, r, c] : acc) terms.emplace_back(l * dim + r, c);
  return TensorCombination::from_unsorted(std::move(terms), p);
}

const Combination& SplayDescription::block_antipode(std::size_t b, std::uint32_t local) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = antipode_cache_.at(b).find(local);
    if (it != antipode_cache_[b].end()) return *it->second;
  }
  const auto& dist = *blocks_[b];
  auto built = std::make_shared<const Combination>(dist.additive_to_mult(dist.antipode(dist.mult_to_additive(local))));
  std::lock_guard lock(cache_mutex_);
  auto [it, inserted] = antipode_cache_[b].emplace(local, std::move(built));
  return *it->second;
}

PoissonTable::PoissonTable(std::shared_ptr<const SplayDescription> splay) : splay_(std::move(splay)) {
  if (!splay_) throw DomainError("a Poisson table needs a splay");
}

void PoissonTable::set(Generator eta, Generator zeta, Combination value) {
  const auto& shape = splay_->shape();
  if (eta >= shape.generator_count() || zeta >= shape.generator_count())
    throw DomainError("bracket on a generator outside the level");
  for (const auto& [u, c] : value.terms())
    if (u >= shape.dimension() || c >= shape.prime().value())
      throw DomainError("bracket value escapes the level");
  if (value.empty()) entries_.erase({eta, zeta});
  else entries_[{eta, zeta}] = std::move(value);
}

Combination PoissonTable::bracket(Generator eta, Generator zeta) const {
  if (auto it = entries_.find({eta, zeta}); it != entries_.end()) return it->second;
  if (auto it = entries_.find({zeta, eta}); it != entries_.end())
    return it->second.scaled(splay_->prime().value() - 1, splay_->prime());
  return {};
}

PoissonTable extract_pi(const DistLevel& dist) {
  return extract_pi(dist, SplayDescription::from_law(dist.law(), dist.level()));
}

PoissonTable extract_pi(const DistLevel& dist, std::shared_ptr<const SplayDescription> splay) {
  if (!(splay->shape() == dist.shape())) throw DomainError("splay does not match the distribution level");
  PoissonTable table(splay);
  const auto& shape = dist.shape();
  const Generator n = static_cast<Generator>(shape.generator_count());
  for (Generator eta = 0; eta < n; ++eta)
    for (Generator zeta = 0; zeta < eta; ++zeta) {
      if (splay->block_of_generator(eta) == splay->block_of_generator(zeta)) continue;
      table.set(eta, zeta, dist.additive_to_mult(dist.canonical_commutator(eta, zeta)));
    }
  return table;
}

std::string monomial_text(const LevelShape& shape, std::uint32_t monomial) {
  if (monomial == 0) return "1";
  std::string s;
  for (auto g : shape.word(monomial)) {
    if (!s.empty()) s += " ";
    s += shape.generator_name(g);
  }
  return s;
}

std::string combination_text(const LevelShape& shape, const Combination& c) {
  auto terms = c.terms();
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return shape.compare_monomials(a.first, b.first) > 0; });
  std::string s;
  for (const auto& [u, v] : terms) {
    if (!s.empty()) s += " + ";
    auto body = monomial_text(shape, u);
    if (body == "1") s += std::to_string(v);
    else s += v == 1 ? body : std::to_string(v) + "*" + body;
  }
  return s;
}

}  // namespace fgdist
