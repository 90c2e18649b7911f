#include <doctest.h>

#include <fgdist/error.hpp>
#include <fgdist/poisson.hpp>

#include "../support/fixtures.hpp"

using namespace fgdist;
using fixtures::Extracted;

namespace {

const CheckEntry& entry(const CheckReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return e;
  FAIL("no entry " << name);
  return r.entries.front();
}

Generator gen(const LevelShape& sh, std::size_t coord, unsigned power) { return sh.generator(coord, power); }

}  // namespace

TEST_SUITE("splay_poisson") {
  TEST_CASE("splay layout of T2") {
    const auto splay = SplayDescription::from_law(fixtures::t2(3, 1), 1);
    const auto& sh = splay->shape();
    CHECK(splay->block_count() == 2);
    CHECK(sh.dimension() == 81);
    CHECK(splay->block(0).dimension() == 9);
    CHECK(splay->block_of_generator(gen(sh, 0, 1)) == 0);
    CHECK(splay->block_of_generator(gen(sh, 1, 0)) == 1);
    CHECK(splay->first_generator(1) == 2);
    for (std::uint32_t u = 0; u < sh.dimension(); ++u) {
      const auto a = splay->local_part(0, u), b = splay->local_part(1, u);
      CHECK(splay->embed(0, a) + splay->embed(1, b) == u);
    }
    const auto x = sh.generator_code(gen(sh, 0, 0)), y = sh.generator_code(gen(sh, 1, 0));
    CHECK(splay->pure_block(x) == 0);
    CHECK(splay->pure_block(y) == 1);
    CHECK(splay->pure_block(x + y) == 2);
    CHECK(splay->pure_block(0) == 2);
  }

  TEST_CASE("Frobenius in the blocks") {
    const auto splay = SplayDescription::from_law(fixtures::t2(3, 1), 1);
    const auto& sh = splay->shape();
    for (unsigned t = 0; t <= 1; ++t) {
      const auto gx = gen(sh, 0, t), gy = gen(sh, 1, t);
      CHECK(splay->frobenius(gx) == Combination::single(sh.generator_code(gx), 1));
      CHECK(splay->frobenius(gy).empty());
    }
  }

  TEST_CASE("extracted T2 table at p = 2, R = 1") {
    const Extracted e(fixtures::t2(2, 1), 1);
    const auto& sh = e.splay->shape();
    const auto y = gen(sh, 1, 0), x2 = gen(sh, 0, 1);
    REQUIRE(e.table.entries().size() == 1);
    CHECK(e.table.bracket(y, x2) == Combination::single(sh.generator_code(y), 1));
    CHECK(e.table.bracket(x2, y) == Combination::single(sh.generator_code(y), 1));
    CHECK(e.table.bracket(y, gen(sh, 0, 0)).empty());
  }

  TEST_CASE("extracted entries are Dist commutators") {
    for (auto [p, level] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const auto& sh = e.splay->shape();
      const auto& dist = *e.dist;
      for (Generator eta = 0; eta < sh.generator_count(); ++eta)
        for (Generator zeta = 0; zeta < sh.generator_count(); ++zeta) {
          const auto c = dist.commutator(dist.generator(sh.coord_of(eta), sh.power_of(eta)),
                                         dist.generator(sh.coord_of(zeta), sh.power_of(zeta)));
          const bool cross = e.splay->block_of_generator(eta) != e.splay->block_of_generator(zeta);
          CHECK(dist.mult_to_additive(e.table.bracket(eta, zeta)) == (cross ? c : dist.zero()));
        }
    }
  }

  TEST_CASE("commutative laws give the zero table") {
    const Extracted e(fixtures::ga_gm(3, 1), 1);
    CHECK(e.table.entries().empty());
    CHECK(check_poisson_axioms(e.table).passed());
  }

  TEST_CASE("extracted tables pass every check") {
    for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {2u, 2u}, {3u, 0u}, {3u, 1u}, {5u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const auto r = check_poisson_axioms(e.table);
      INFO(r.to_text());
      CHECK(r.passed());
      CHECK(r.entries.size() == 6);
    }
  }

  TEST_CASE("bi-derivation extension matches Dist commutators of full products") {
    for (auto [p, level] : {std::pair{2u, 1u}, {3u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const RewriteSystem sys(e.splay, e.table);
      const auto& sh = sys.shape();
      const auto& dist = *e.dist;
      for (std::uint32_t u = 0; u < sh.dimension(); ++u)
        for (std::uint32_t v = 0; v < sh.dimension(); ++v) {
          const auto ext = extend_biderivation(sys, sh.word(u), sh.word(v));
          const auto want = dist.commutator(dist.mult_to_additive(u), dist.mult_to_additive(v));
          REQUIRE(dist.mult_to_additive(ext) == want);
        }
    }
  }

  TEST_CASE("bi-derivation on combinations is bilinear") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const RewriteSystem sys(e.splay, e.table);
    const auto& sh = sys.shape();
    const Prime p = sys.prime();
    const auto a = Combination::from_unsorted({{3, 1}, {10, 2}}, p);
    const auto b = Combination::from_unsorted({{27, 1}, {1, 2}}, p);
    auto want = Combination();
    for (const auto& [u, cu] : a.terms())
      for (const auto& [v, cv] : b.terms())
        want = want.axpy(extend_biderivation(sys, sh.word(u), sh.word(v)), p.mul(cu, cv), p);
    CHECK(extend_biderivation(sys, a, b) == want);
    CHECK(extend_biderivation(sys, Word{}, sh.word(3)).empty());
  }

  TEST_CASE("skew-symmetry fails on a negated reverse entry") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    const auto y = gen(sh, 1, 0), x3 = gen(sh, 0, 1);
    const auto value = e.table.bracket(y, x3);
    REQUIRE_FALSE(value.empty());
    t.set(x3, y, value);  // should have been -value
    const auto r = check_skew_and_constants(t);
    CHECK_FALSE(entry(r, "skew-symmetry").passed);
    CHECK(entry(r, "skew-symmetry").witness == "(y, x^3) vs (x^3, y)");
    CHECK(entry(r, "internal symmetry").passed);
  }

  TEST_CASE("a diagonal or intra-block entry is rejected") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    t.set(gen(sh, 0, 1), gen(sh, 0, 0), Combination::single(sh.generator_code(gen(sh, 0, 0)), 1));
    CHECK_FALSE(entry(check_skew_and_constants(t), "internal symmetry").passed);
    PoissonTable d = e.table;
    d.set(gen(sh, 1, 0), gen(sh, 1, 0), Combination::single(0, 1));
    CHECK_FALSE(entry(check_skew_and_constants(d), "skew-symmetry").passed);
  }

  TEST_CASE("Jacobi fails on a zeroed entry") {
    const Extracted e(fixtures::t2(3, 2), 2);
    const auto& sh = e.splay->shape();
    CHECK(check_jacobi(e.table).passed());
    PoissonTable t = e.table;
    t.set(gen(sh, 1, 1), gen(sh, 0, 1), {});
    const auto r = check_jacobi(t);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure()->name == "Jacobi identity");
    CHECK(r.first_failure()->witness.rfind("(y^3, y, x^9)", 0) == 0);
  }

  TEST_CASE("strong filtration fails on a degree-inflated entry") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    const auto x = gen(sh, 0, 0), y = gen(sh, 1, 0);
    t.set(y, x, Combination::single(sh.generator_code(x) + sh.generator_code(y), 1));
    const auto r = check_strongly_filtered(t);
    CHECK_FALSE(r.passed());
    CHECK(r.first_failure()->witness.rfind("pi(y, x)", 0) == 0);
    CHECK(check_strongly_filtered(e.table).passed());
  }

  TEST_CASE("strong multiplicativity fails on a constant-valued entry") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    t.set(gen(sh, 1, 0), gen(sh, 0, 0), Combination::single(0, 1));
    const auto r = check_strongly_multiplicative(t);
    CHECK_FALSE(r.passed());
    CHECK(r.first_failure()->witness == "pair (y, x)");
    CHECK(check_strongly_filtered(t).passed());
    CHECK(check_skew_and_constants(t).passed());

    // and on the commutative product, where the zero table is the correct one
    const Extracted c(product_law({fixtures::ga(2, 1, 2), fixtures::ga(2, 1, 2)}), 1);
    PoissonTable k = c.table;
    const auto& csh = c.splay->shape();
    k.set(gen(csh, 1, 0), gen(csh, 0, 0), Combination::single(0, 1));
    CHECK_FALSE(check_strongly_multiplicative(k).passed());
  }

  TEST_CASE("table entries outside the level are rejected") {
    const Extracted e(fixtures::t2(2, 1), 1);
    PoissonTable t = e.table;
    CHECK_THROWS_AS(t.set(9, 0, {}), DomainError);
    CHECK_THROWS_AS(t.set(2, 0, Combination::single(16, 1)), DomainError);
  }
}
