#include <doctest.h>

#include <fgdist/error.hpp>
#include <fgdist/reconstruct.hpp>

#include "../support/fixtures.hpp"

using namespace fgdist;
using fixtures::Extracted;

TEST_SUITE("reconstruct") {
  TEST_CASE("round trip T2 at p = 2, R = 1") {
    const Extracted e(fixtures::t2(2, 1), 1);
    const auto U = build_U(e.splay, e.table);
    CHECK(U.dimension() == 16);
    CHECK(U.basis().size() == 16);
    const auto r = compare_with_oracle(U, *e.dist);
    CHECK(r.passed());
    CHECK(r.entries.front().detail == "identical on 256 structure constants");
    const auto& sh = U.shape();
    const auto y = sh.generator_code(sh.generator(1, 0)), x2 = sh.generator_code(sh.generator(0, 1));
    CHECK(combination_text(sh, U.product(y, x2)) == "x^2 y + y");
  }

  TEST_CASE("round trip across laws") {
    for (auto [p, level] : {std::pair{2u, 0u}, {3u, 1u}}) {
      for (const auto& law : {fixtures::ga(p, level), fixtures::gm(p, level), fixtures::ga_gm(p, level),
                              fixtures::t2(p, level)}) {
        const Extracted e(law, level);
        const auto U = build_U(e.splay, e.table);
        const auto r = compare_with_oracle(U, *e.dist);
        INFO(r.to_text());
        CHECK(r.passed());
      }
    }
  }

  TEST_CASE("a zeroed entry is caught by the comparison") {
    const Extracted e(fixtures::t2(2, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    t.set(sh.generator(1, 0), sh.generator(0, 1), {});
    CHECK(check_poisson_axioms(t).passed());
    const auto U = build_U(e.splay, t);
    const auto r = compare_with_oracle(U, *e.dist);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure()->witness == "(y, x^2)");
    CHECK(r.first_failure()->detail == "U gives x^2 y, Dist gives x^2 y + y");
  }

  TEST_CASE("build_U refuses tables that fail an axiom") {
    const Extracted e(fixtures::t2(3, 2), 2);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    t.set(sh.generator(1, 1), sh.generator(0, 1), {});
    try {
      (void)build_U(e.splay, t);
      FAIL("build_U accepted a table that fails Jacobi");
    } catch (const AxiomError& err) {
      CHECK(err.axiom() == "Jacobi identity");
      CHECK(err.witness().rfind("(y^3, y, x^9)", 0) == 0);
    }

    const Extracted s(fixtures::t2(3, 1), 1);
    PoissonTable k = s.table;
    const auto& ssh = s.splay->shape();
    k.set(ssh.generator(1, 0), ssh.generator(0, 0), Combination::single(0, 1));
    CHECK_THROWS_AS(build_U(s.splay, k), AxiomError);
  }

  TEST_CASE("zero table gives the commutative tensor product") {
    const Extracted e(fixtures::ga_gm(3, 1), 1);
    const auto U = build_U(e.splay, e.table);
    const auto& splay = U.splay();
    const Prime p = U.prime();
    for (std::uint32_t u = 0; u < U.dimension(); ++u)
      for (std::uint32_t v = 0; v < U.dimension(); ++v) {
        REQUIRE(U.product(u, v) == U.product(v, u));
        // NF(uv) = NF_0(u_0 v_0) NF_1(u_1 v_1) with the block products of Dist(H_b)
        Combination want = Combination::single(0, 1);
        for (std::size_t b = 0; b < splay.block_count(); ++b) {
          const auto& block = splay.block(b);
          const auto local = block.additive_to_mult(block.mul(block.mult_to_additive(splay.local_part(b, u)),
                                                              block.mult_to_additive(splay.local_part(b, v))));
          SparseBuilder<std::uint32_t> next(p);
          for (const auto& [a, ca] : want.terms())
            for (const auto& [l, cl] : local.terms()) next.add(a + splay.embed(b, l), p.mul(ca, cl));
          want = next.finish();
        }
        REQUIRE(U.product(u, v) == want);
      }
  }

  TEST_CASE("U is associative on all basis triples") {
    for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const auto U = build_U(e.splay, e.table);
      const auto d = U.dimension();
      for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b)
          for (std::uint32_t c = 0; c < d; ++c) {
            const auto A = Combination::single(a, 1), C = Combination::single(c, 1);
            REQUIRE(U.multiply(U.product(a, b), C) == U.multiply(A, U.product(b, c)));
          }
    }
  }

  TEST_CASE("DVPS structure") {
    for (auto [p, level] : {std::pair{2u, 1u}, {3u, 1u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const auto U = build_U(e.splay, e.table);
      const auto r = dvps_verify(U);
      INFO(r.to_text());
      CHECK(r.passed());
      CHECK(r.entries.size() == 4);
    }
  }

  TEST_CASE("divided-power coproduct on additive codes") {
    const LevelShape sh(Prime(3), {"x", "y"}, 1);
    const auto j = sh.index(MultiIndex{2, 1});
    const auto t = dvps_additive(sh, j);
    CHECK(t.size() == 6);
    CHECK(t.coeff(std::uint64_t{j} * sh.dimension()) == 1);
    CHECK(t.coeff(j) == 1);
    CHECK(t.coeff(std::uint64_t{sh.index(MultiIndex{1, 0})} * sh.dimension() + sh.index(MultiIndex{1, 1})) == 1);
  }

  TEST_CASE("splay basis change is inverse to itself") {
    const Extracted e(fixtures::t2(3, 1), 1);
    for (std::uint32_t u = 0; u < e.splay->shape().dimension(); ++u) {
      Combination back;
      const auto additive = mult_to_additive(*e.splay, u);
      for (const auto& [a, c] : additive.terms()) back = back.axpy(additive_to_mult(*e.splay, a), c, e.splay->prime());
      REQUIRE(back == Combination::single(u, 1));
    }
  }

  TEST_CASE("a corrupted structure constant fails DVPS") {
    const Extracted e(fixtures::t2(3, 1), 1);
    auto U = build_U(e.splay, e.table);
    const auto& sh = U.shape();
    const auto x = sh.generator_code(sh.generator(0, 0)), y = sh.generator_code(sh.generator(1, 0));
    U.set_product(y, x, Combination::single(x + y, 1).axpy(Combination::single(0, 1), 1, U.prime()));
    const auto r = dvps_verify(U);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure()->name == "comultiplication is multiplicative");
    CHECK_FALSE(compare_with_oracle(U, *e.dist).passed());
  }

  TEST_CASE("comparison refuses a different level") {
    const Extracted e(fixtures::t2(2, 1), 1);
    const auto U = build_U(e.splay, e.table);
    const DistLevel other(fixtures::t2(2, 0), 0);
    const auto r = compare_with_oracle(U, other);
    CHECK_FALSE(r.passed());
    CHECK(r.first_failure()->witness == "shape");
  }

  TEST_CASE("order swap equivalence") {
    for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {3u, 0u}, {3u, 1u}, {5u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const auto r = swap_order_equivalence(e.splay, e.table, 0);
      INFO(r.to_text());
      CHECK(r.passed());
    }
  }

  TEST_CASE("order swap with a block antipode omitted fails") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto r = swap_order_equivalence(e.splay, e.table, 0, 0);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure()->name == "order swap equivalence");
    CHECK(r.first_failure()->witness == "(y, x)");
  }

  TEST_CASE("order swap on one block is vacuous") {
    const Extracted e(fixtures::gm(3, 1), 1);
    const auto r = swap_order_equivalence(e.splay, e.table, 0);
    CHECK(r.passed());
    CHECK(r.entries.front().detail == "single block, nothing to swap");
  }

  TEST_CASE("coproduct of combinations and tensor products") {
    const Extracted e(fixtures::t2(2, 1), 1);
    const auto U = build_U(e.splay, e.table);
    for (std::uint32_t u = 0; u < U.dimension(); ++u) {
      CHECK(U.comul(Combination::single(u, 1)) == U.comul(u));
      CHECK(U.counit(Combination::single(u, 1)) == (u == 0 ? 1u : 0u));
    }
  }
}
