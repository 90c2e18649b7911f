#include "fgdist/reconstruct.hpp"

#include <map>

#include "fgdist/error.hpp"
#include "fgdist/parallel.hpp"

namespace fgdist {

ReconstructedAlgebra::ReconstructedAlgebra(std::shared_ptr<const SplayDescription> splay, PoissonTable table,
                                           std::vector<std::uint32_t> basis, std::vector<Combination> structure,
                                           std::vector<TensorCombination> comul)
    : splay_(std::move(splay)),
      table_(std::move(table)),
      basis_(std::move(basis)),
      structure_(std::move(structure)),
      comul_(std::move(comul)) {
  const std::size_t dim = dimension();
  if (basis_.size() != dim || structure_.size() != dim * dim || comul_.size() != dim)
    throw DomainError("algebra data does not match the level dimension");
}

Combination ReconstructedAlgebra::multiply(const Combination& a, const Combination& b) const {
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) acc.add(product(u, v), prime().mul(cu, cv));
  return acc.finish();
}

TensorCombination ReconstructedAlgebra::comul(const Combination& a) const {
  SparseBuilder<std::uint64_t> acc(prime());
  for (const auto& [u, c] : a.terms()) acc.add(comul(u), c);
  return acc.finish();
}

TensorCombination ReconstructedAlgebra::tensor_multiply(const TensorCombination& a,
                                                        const TensorCombination& b) const {
  const Prime p = prime();
  const std::uint64_t dim = dimension();
  SparseBuilder<std::uint64_t> acc(p);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const auto& left = product(static_cast<std::uint32_t>(ka / dim), static_cast<std::uint32_t>(kb / dim));
      if (left.empty()) continue;
      const auto& right = product(static_cast<std::uint32_t>(ka % dim), static_cast<std::uint32_t>(kb % dim));
      const auto c = p.mul(ca, cb);
      for (const auto& [l, cl] : left.terms())
        for (const auto& [r, cr] : right.terms()) acc.add(l * dim + r, p.mul(c, p.mul(cl, cr)));
    }
  return acc.finish();
}

void ReconstructedAlgebra::set_product(std::uint32_t u, std::uint32_t v, Combination value) {
  structure_.at(static_cast<std::size_t>(u) * dimension() + v) = std::move(value);
}

ReconstructedAlgebra build_U(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table,
                             BuildOptions options) {
  if (!splay) throw DomainError("build_U needs a splay");
  if (!(table.splay().shape() == splay->shape())) throw DomainError("table belongs to a different splay");
  if (options.check_axioms) {
    const auto report = check_poisson_axioms(table);
    if (const auto* f = report.first_failure()) throw AxiomError(f->name, f->witness);
  }
  const RewriteSystem sys(splay, table);
  const std::uint32_t dim = splay->shape().dimension();
  std::vector<Combination> structure(static_cast<std::size_t>(dim) * dim);
  parallel_for(dim, [&](std::size_t u) {
    for (std::uint32_t v = 0; v < dim; ++v)
      structure[u * dim + v] = sys.multiply(static_cast<std::uint32_t>(u), v);
  });
  std::vector<TensorCombination> comul(dim);
  for (std::uint32_t u = 0; u < dim; ++u) comul[u] = splay->comul(u);
  return ReconstructedAlgebra(splay, table, enumerate_pbw_basis(sys), std::move(structure), std::move(comul));
}

TensorCombination dvps_additive(const LevelShape& shape, std::uint32_t idx) {
  const std::uint64_t dim = shape.dimension();
  const auto j = shape.exponents(idx);
  std::vector<TensorCombination::Term> terms;
  // walk every A <= J as a mixed-radix counter
  MultiIndex a(shape.coordinates());
  for (;;) {
    const std::uint32_t ac = shape.index(a);
    terms.emplace_back(ac * dim + (idx - ac), 1);
    std::size_t k = 0;
    while (k < shape.coordinates() && a[k] == j[k]) a[k++] = 0;
    if (k == shape.coordinates()) break;
    ++a[k];
  }
  return TensorCombination::from_unsorted(std::move(terms), shape.prime());
}

namespace {

// Ordered product over blocks of per-block combinations, as global codes.
template <class PerBlock>
Combination across_blocks(const SplayDescription& splay, std::uint32_t code, PerBlock per_block) {
  const Prime p = splay.prime();
  std::vector<Combination::Term> acc{{0, 1}};
  for (std::size_t b = 0; b < splay.block_count(); ++b) {
    const std::uint32_t local = splay.local_part(b, code);
    if (local == 0) continue;
    const Combination part = per_block(b, local);
    std::vector<Combination::Term> next;
    for (const auto& [g, c] : acc)
      for (const auto& [l, cl] : part.terms()) next.emplace_back(g + splay.embed(b, l), p.mul(c, cl));
    acc = std::move(next);
  }
  return Combination::from_unsorted(std::move(acc), p);
}

std::string pair_words(const LevelShape& sh, std::uint32_t u, std::uint32_t v) {
  return "(" + monomial_text(sh, u) + ", " + monomial_text(sh, v) + ")";
}

}  // namespace

Combination mult_to_additive(const SplayDescription& splay, std::uint32_t monomial) {
  return across_blocks(splay, monomial, [&](std::size_t b, std::uint32_t local) {
    return splay.block(b).mult_to_additive(local).terms;
  });
}

Combination additive_to_mult(const SplayDescription& splay, std::uint32_t idx) {
  return across_blocks(splay, idx, [&](std::size_t b, std::uint32_t local) {
    const auto& dist = splay.block(b);
    return dist.additive_to_mult(dist.basis_element(local));
  });
}

CheckReport dvps_verify(const ReconstructedAlgebra& U) {
  CheckReport r;
  const auto& sh = U.shape();
  const Prime p = U.prime();
  const std::uint32_t dim = U.dimension();
  const std::uint64_t d64 = dim;

  // multiplicativity, one row of the structure table per task
  std::vector<std::optional<std::uint32_t>> bad_row(dim);
  parallel_for(dim, [&](std::size_t u) {
    for (std::uint32_t v = 0; v < dim; ++v) {
      const auto lhs = U.comul(U.product(static_cast<std::uint32_t>(u), v));
      const auto rhs = U.tensor_multiply(U.comul(static_cast<std::uint32_t>(u)), U.comul(v));
      if (!(lhs == rhs)) {
        bad_row[u] = v;
        return;
      }
    }
  });
  bool multiplicative = true;
  for (std::uint32_t u = 0; u < dim && multiplicative; ++u)
    if (bad_row[u]) {
      r.fail("comultiplication is multiplicative", pair_words(sh, u, *bad_row[u]));
      multiplicative = false;
    }
  if (multiplicative)
    r.pass("comultiplication is multiplicative", std::to_string(d64 * d64) + " basis pairs");

  // coassociativity on triple keys (l * dim + m) * dim + r
  auto coassoc_fail = [&]() -> std::optional<std::uint32_t> {
    for (std::uint32_t u = 0; u < dim; ++u) {
      SparseBuilder<std::uint64_t> left(p), right(p);
      for (const auto& [k, c] : U.comul(u).terms()) {
        const auto a = k / d64, b = k % d64;
        for (const auto& [k2, c2] : U.comul(static_cast<std::uint32_t>(a)).terms())
          left.add(k2 * d64 + b, p.mul(c, c2));
        for (const auto& [k2, c2] : U.comul(static_cast<std::uint32_t>(b)).terms())
          right.add(a * d64 * d64 + k2, p.mul(c, c2));
      }
      if (!(left.finish() == right.finish())) return u;
    }
    return std::nullopt;
  }();
  if (coassoc_fail) r.fail("coassociativity", monomial_text(sh, *coassoc_fail));
  else r.pass("coassociativity");

  std::optional<std::uint32_t> counit_fail;
  for (std::uint32_t u = 0; u < dim && !counit_fail; ++u) {
    SparseBuilder<std::uint32_t> left(p), right(p);
    for (const auto& [k, c] : U.comul(u).terms()) {
      if (k / d64 == 0) left.add(static_cast<std::uint32_t>(k % d64), c);
      if (k % d64 == 0) right.add(static_cast<std::uint32_t>(k / d64), c);
    }
    const auto unit = Combination::single(u, 1);
    if (!(left.finish() == unit) || !(right.finish() == unit)) counit_fail = u;
  }
  if (counit_fail) r.fail("counit", monomial_text(sh, *counit_fail));
  else r.pass("counit");

  // the divided-power rule, carried into the multiplicative basis
  std::optional<std::uint32_t> dvps_fail;
  std::vector<Combination> to_mult(dim);
  for (std::uint32_t a = 0; a < dim; ++a) to_mult[a] = additive_to_mult(U.splay(), a);
  for (std::uint32_t j = 0; j < dim && !dvps_fail; ++j) {
    SparseBuilder<std::uint64_t> expect(p);
    const auto split = dvps_additive(sh, j);
    for (const auto& [k, c] : split.terms()) {
      for (const auto& [l, cl] : to_mult[k / d64].terms())
        for (const auto& [rr, cr] : to_mult[k % d64].terms()) expect.add(l * d64 + rr, p.mul(c, p.mul(cl, cr)));
    }
    if (!(expect.finish() == U.comul(to_mult[j]))) dvps_fail = j;
  }
  if (dvps_fail) r.fail("divided-power coproduct", "additive code " + std::to_string(*dvps_fail));
  else r.pass("divided-power coproduct");
  return r;
}

CheckReport compare_with_oracle(const ReconstructedAlgebra& U, const DistLevel& dist) {
  CheckReport r;
  const auto& sh = U.shape();
  if (!(sh == dist.shape())) {
    r.fail("structure constants", "shape", "algebra and distribution level differ in prime, coordinates or level");
    return r;
  }
  const std::uint32_t dim = U.dimension();
  std::vector<std::optional<std::uint32_t>> bad(dim);
  parallel_for(dim, [&](std::size_t i) {
    const std::uint32_t u = U.basis()[i];
    const auto& du = dist.mult_to_additive(u);
    for (std::uint32_t v : U.basis()) {
      const auto oracle = dist.additive_to_mult(dist.mul(du, dist.mult_to_additive(v)));
      if (!(oracle == U.product(u, v))) {
        bad[i] = v;
        return;
      }
    }
  });
  for (std::uint32_t i = 0; i < dim; ++i)
    if (bad[i]) {
      const std::uint32_t u = U.basis()[i];
      const auto oracle = dist.additive_to_mult(dist.mul(dist.mult_to_additive(u), dist.mult_to_additive(*bad[i])));
      r.fail("structure constants", pair_words(sh, u, *bad[i]),
             "U gives " + combination_text(sh, U.product(u, *bad[i])) + ", Dist gives " +
                 combination_text(sh, oracle));
      return r;
    }
  const std::uint64_t n = static_cast<std::uint64_t>(dim) * dim;
  r.pass("structure constants", "identical on " + std::to_string(n) + " structure constants");
  return r;
}

namespace {

// Blocks i and i + 1 trade places; everything else stays.
struct Swap {
  const SplayDescription& from;
  const SplayDescription& to;
  std::vector<std::size_t> pos;  // block b of `from` sits at pos[b] in `to`; an involution

  std::uint32_t code(std::uint32_t c) const {
    std::uint32_t out = 0;
    for (std::size_t b = 0; b < from.block_count(); ++b) out += to.embed(pos[b], from.local_part(b, c));
    return out;
  }
  Generator generator(Generator g) const {
    const std::size_t b = from.block_of_generator(g);
    return static_cast<Generator>(to.first_generator(pos[b]) + (g - from.first_generator(b)));
  }
};

}  // namespace

CheckReport swap_order_equivalence(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table,
                                   std::size_t i, std::optional<std::size_t> omit_antipode) {
  CheckReport r;
  const std::string name = "order swap equivalence";
  if (splay->block_count() < 2) {
    r.pass(name, "single block, nothing to swap");
    return r;
  }
  if (i + 1 >= splay->block_count()) throw DomainError("no block after block " + std::to_string(i));

  const RewriteSystem sys(splay, table);
  const auto& sh = splay->shape();
  const Prime p = splay->prime();

  std::vector<std::size_t> pos(splay->block_count());
  for (std::size_t b = 0; b < pos.size(); ++b) pos[b] = b;
  std::swap(pos[i], pos[i + 1]);
  std::vector<FormalGroupLaw> laws;
  for (std::size_t b = 0; b < pos.size(); ++b) laws.push_back(splay->block_law(pos[b]));
  auto swapped = std::make_shared<const SplayDescription>(std::move(laws), splay->level());
  const auto& sh2 = swapped->shape();
  const Swap fwd{*splay, *swapped, pos};
  const Swap back{*swapped, *splay, pos};

  // A swapped-order sorted word, read as an element of U.
  std::map<std::uint32_t, Combination> nf_cache;
  auto in_U = [&](std::uint32_t code2) -> const Combination& {
    auto it = nf_cache.find(code2);
    if (it != nf_cache.end()) return it->second;
    Word w;
    for (auto g : sh2.word(code2)) w.push_back(back.generator(g));
    return nf_cache.emplace(code2, sys.normal_form(w)).first->second;
  };
  // Rewrites an element of U in the swapped PBW basis. in_U(w') is the
  // monomial with the same letters plus terms of lower degree, so peeling the
  // highest-degree term terminates.
  auto to_swapped_basis = [&](Combination x) {
    SparseBuilder<std::uint32_t> out(p);
    while (!x.empty()) {
      auto top = x.terms().front();
      for (const auto& t : x.terms())
        if (sh.degree(t.first) > sh.degree(top.first)) top = t;
      const std::uint32_t code2 = fwd.code(top.first);
      out.add(code2, top.second);
      x = x.axpy(in_U(code2), p.value() - top.second, p);
    }
    return out.finish();
  };

  PoissonTable table2(swapped);
  const auto gens = static_cast<Generator>(sh2.generator_count());
  for (Generator c = 0; c < gens; ++c)
    for (Generator d = 0; d < c; ++d) {
      if (swapped->block_of_generator(c) == swapped->block_of_generator(d)) continue;
      const Generator c0 = back.generator(c), d0 = back.generator(d);
      const auto commutator = sys.normal_form(Word{c0, d0}).axpy(sys.normal_form(Word{d0, c0}), p.value() - 1, p);
      table2.set(c, d, to_swapped_basis(commutator));
    }

  const auto axioms = check_poisson_axioms(table2);
  if (const auto* f = axioms.first_failure()) {
    r.fail("transported table", f->name + " " + f->witness);
    return r;
  }
  r.pass("transported table", std::to_string(table2.entries().size()) + " entries");
  const RewriteSystem sys2(swapped, table2);

  auto phi = [&](std::uint32_t u) {
    std::vector<Combination::Term> acc{{0, 1}};
    for (std::size_t b = 0; b < splay->block_count(); ++b) {
      const std::uint32_t local = splay->local_part(b, u);
      if (local == 0) continue;
      const bool flip = (b == i || b == i + 1) && omit_antipode != b;
      const Combination part = flip ? splay->block_antipode(b, local) : Combination::single(local, 1);
      std::vector<Combination::Term> next;
      for (const auto& [g, c] : acc)
        for (const auto& [l, cl] : part.terms()) next.emplace_back(g + swapped->embed(pos[b], l), p.mul(c, cl));
      acc = std::move(next);
    }
    return Combination::from_unsorted(std::move(acc), p);
  };

  std::size_t pairs = 0;
  const auto gens1 = static_cast<Generator>(sh.generator_count());
  for (Generator eta = 0; eta < gens1; ++eta)
    for (Generator zeta = 0; zeta < eta; ++zeta) {
      const std::size_t be = splay->block_of_generator(eta), bz = splay->block_of_generator(zeta);
      if (be != i + 1 || bz != i) continue;
      ++pairs;
      SparseBuilder<std::uint32_t> lhs(p);
      for (const auto& [u, c] : sys.straighten(eta, zeta).terms()) lhs.add(phi(u), c);
      const auto rhs =
          extend_biderivation(sys2, phi(sh.generator_code(zeta)), phi(sh.generator_code(eta)));
      if (!(lhs.finish() == rhs)) {
        r.fail(name, "(" + sh.generator_name(eta) + ", " + sh.generator_name(zeta) + ")");
        return r;
      }
    }
  r.pass(name, std::to_string(pairs) + " generator pairs");
  return r;
}

}  // namespace fgdist
