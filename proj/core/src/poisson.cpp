#include "fgdist/poisson.hpp"

#include <algorithm>

#include "fgdist/error.hpp"

namespace fgdist {

namespace {

Combination generator_bracket(const RewriteSystem& sys, Generator a, Generator b) {
  if (a == b) return {};
  if (a > b) return sys.straighten(a, b);
  return sys.straighten(b, a).scaled(sys.prime().value() - 1, sys.prime());
}

std::string pair_text(const LevelShape& sh, Generator a, Generator b) {
  return "(" + sh.generator_name(a) + ", " + sh.generator_name(b) + ")";
}

}  // namespace

Combination extend_biderivation(const RewriteSystem& sys, const Word& u, const Word& v) {
  if (u.empty() || v.empty()) return {};
  const Prime p = sys.prime();
  if (u.size() >= 2) {
    const Word head(u.begin(), u.end() - 1);
    const Word tail{u.back()};
    auto a = sys.multiply(sys.normal_form(head), extend_biderivation(sys, tail, v));
    auto b = sys.multiply(extend_biderivation(sys, head, v), sys.normal_form(tail));
    return a.plus(b, p);
  }
  if (v.size() >= 2) {
    const Word head(v.begin(), v.end() - 1);
    const Word tail{v.back()};
    auto a = sys.multiply(extend_biderivation(sys, u, head), sys.normal_form(tail));
    auto b = sys.multiply(sys.normal_form(head), extend_biderivation(sys, u, tail));
    return a.plus(b, p);
  }
  return generator_bracket(sys, u.front(), v.front());
}

Combination extend_biderivation(const RewriteSystem& sys, const Combination& a, const Combination& b) {
  const auto& sh = sys.shape();
  SparseBuilder<std::uint32_t> acc(sys.prime());
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms())
      acc.add(extend_biderivation(sys, sh.word(u), sh.word(v)), sys.prime().mul(cu, cv));
  return acc.finish();
}

CheckReport check_skew_and_constants(const PoissonTable& table) {
  CheckReport r;
  const auto& splay = table.splay();
  const auto& sh = splay.shape();
  const Prime p = splay.prime();

  std::string skew_bad, diag_bad, internal_bad;
  for (const auto& [key, value] : table.entries()) {
    const auto [a, b] = key;
    if (a == b && diag_bad.empty()) diag_bad = pair_text(sh, a, b);
    if (a != b && splay.block_of_generator(a) == splay.block_of_generator(b) && internal_bad.empty())
      internal_bad = pair_text(sh, a, b);
    if (a > b) {
      auto it = table.entries().find({b, a});
      if (it != table.entries().end() && !(it->second == value.scaled(p.value() - 1, p)) && skew_bad.empty())
        skew_bad = pair_text(sh, a, b) + " vs " + pair_text(sh, b, a);
    }
  }
  if (skew_bad.empty() && diag_bad.empty()) r.pass("skew-symmetry");
  else r.fail("skew-symmetry", skew_bad.empty() ? "pi" + diag_bad + " != 0" : skew_bad);
  if (internal_bad.empty()) r.pass("internal symmetry");
  else r.fail("internal symmetry", "pi" + internal_bad + " inside one block");
  // Brackets are only ever stored on generators, so pi(1, .) = 0 holds by
  // construction.
  r.pass("vanishing on constants");
  return r;
}

CheckReport check_strongly_filtered(const PoissonTable& table) {
  CheckReport r;
  const auto& sh = table.splay().shape();
  long slack = -1;
  for (const auto& [key, value] : table.entries()) {
    const auto [a, b] = key;
    const long bound = static_cast<long>(sh.weight(a) + sh.weight(b)) - 1;
    for (const auto& [u, c] : value.terms()) {
      const long d = sh.degree(u);
      if (d > bound) {
        r.fail("strong filtration", "pi" + pair_text(sh, a, b) + " has " + monomial_text(sh, u) + " of degree " +
                                        std::to_string(d) + " > " + std::to_string(bound));
        return r;
      }
      slack = slack < 0 ? bound - d : std::min(slack, bound - d);
    }
  }
  r.pass("strong filtration", slack < 0 ? "no entries" : "minimum slack " + std::to_string(slack));
  return r;
}

namespace {

// Builds the rewrite system or records why it cannot be built.
std::unique_ptr<RewriteSystem> system_or_fail(const PoissonTable& table, const std::string& name, CheckReport& r) {
  try {
    return std::make_unique<RewriteSystem>(table.splay_ptr(), table);
  } catch (const AxiomError& e) {
    r.fail(name, "not evaluable: " + std::string(e.what()));
    return nullptr;
  }
}

}  // namespace

CheckReport check_jacobi(const PoissonTable& table) {
  CheckReport r;
  auto sys = system_or_fail(table, "Jacobi identity", r);
  if (!sys) return r;
  const auto& sh = sys->shape();
  const Prime p = sys->prime();
  const auto gens = static_cast<Generator>(sh.generator_count());
  auto gen = [&](Generator g) { return Combination::single(sh.generator_code(g), 1); };
  std::size_t triples = 0;
  for (Generator k = 0; k < gens; ++k)
    for (Generator j = 0; j < k; ++j)
      for (Generator i = 0; i < j; ++i) {
        ++triples;
        auto t1 = extend_biderivation(*sys, generator_bracket(*sys, k, j), gen(i));
        auto t2 = extend_biderivation(*sys, gen(j), generator_bracket(*sys, k, i));
        auto t3 = extend_biderivation(*sys, generator_bracket(*sys, j, i), gen(k));
        auto defect = t1.plus(t2, p).plus(t3, p);
        if (!defect.empty()) {
          r.fail("Jacobi identity",
                 "(" + sh.generator_name(k) + ", " + sh.generator_name(j) + ", " + sh.generator_name(i) + ")",
                 "defect " + combination_text(sh, defect));
          return r;
        }
      }
  r.pass("Jacobi identity", std::to_string(triples) + " triples");
  return r;
}

CheckReport check_strongly_multiplicative(const PoissonTable& table) {
  CheckReport r;
  auto sys = system_or_fail(table, "strong multiplicativity", r);
  if (!sys) return r;
  const auto& splay = table.splay();
  const auto& sh = splay.shape();
  const Prime p = splay.prime();
  const std::uint64_t dim = sh.dimension();
  const auto gens = static_cast<Generator>(sh.generator_count());

  auto bracket = [&](std::uint32_t a, std::uint32_t b) {
    return extend_biderivation(*sys, sh.word(a), sh.word(b));
  };
  std::size_t pairs = 0;
  for (Generator eta = 0; eta < gens; ++eta)
    for (Generator zeta = 0; zeta < eta; ++zeta) {
      if (splay.block_of_generator(eta) == splay.block_of_generator(zeta)) continue;
      ++pairs;
      SparseBuilder<std::uint64_t> lhs(p), rhs(p);
      for (const auto& [u, c] : sys->straighten(eta, zeta).terms())
        lhs.add(splay.comul(u), c);

      const auto d_eta = splay.comul(sh.generator_code(eta));
      const auto d_zeta = splay.comul(sh.generator_code(zeta));
      auto add_outer = [&](const Combination& left, const Combination& right, std::uint32_t c) {
        for (const auto& [l, cl] : left.terms())
          for (const auto& [rr, cr] : right.terms()) rhs.add(l * dim + rr, p.mul(c, p.mul(cl, cr)));
      };
      for (const auto& [ke, ce] : d_eta.terms()) {
        const auto e1 = static_cast<std::uint32_t>(ke / dim), e2 = static_cast<std::uint32_t>(ke % dim);
        for (const auto& [kz, cz] : d_zeta.terms()) {
          const auto z1 = static_cast<std::uint32_t>(kz / dim), z2 = static_cast<std::uint32_t>(kz % dim);
          const auto c = p.mul(ce, cz);
          const auto pi1 = bracket(e1, z1);
          const auto pi2 = bracket(e2, z2);
          if (!pi1.empty()) add_outer(pi1, sys->multiply(z2, e2), c);
          if (!pi2.empty()) add_outer(sys->multiply(z1, e1), pi2, c);
          if (!pi1.empty() && !pi2.empty()) add_outer(pi1, pi2, c);
        }
      }
      if (!(lhs.finish() == rhs.finish())) {
        r.fail("strong multiplicativity", "pair " + pair_text(sh, eta, zeta));
        return r;
      }
    }
  r.pass("strong multiplicativity", std::to_string(pairs) + " cross-block pairs");
  return r;
}

CheckReport check_poisson_axioms(const PoissonTable& table) {
  CheckReport r = check_skew_and_constants(table);
  r.append(check_strongly_filtered(table));
  r.append(check_jacobi(table));
  r.append(check_strongly_multiplicative(table));
  return r;
}

}  // namespace fgdist
