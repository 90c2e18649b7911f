#include <doctest.h>

#include <map>
#include <random>

#include <fgdist/error.hpp>
#include <fgdist/rewrite.hpp>
#include <fgdist/text.hpp>

#include "../support/fixtures.hpp"

using namespace fgdist;
using fixtures::Extracted;

namespace {

// Independent rewriter: any unsorted adjacent pair, else any run of p equal
// generators, memoized on whole words. Rule right-hand sides are read from
// the system; the reduction strategy is not.
class ReferenceRewriter {
 public:
  explicit ReferenceRewriter(const RewriteSystem& sys) : sys_(sys), p_(sys.prime()) {}

  std::map<Word, std::uint32_t> reduce(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    std::map<Word, std::uint32_t> out;
    const auto& sh = sys_.shape();
    auto add = [&](const std::map<Word, std::uint32_t>& part, std::uint32_t c) {
      for (const auto& [word, v] : part) {
        auto& slot = out[word];
        slot = p_.add(slot, p_.mul(v, c));
        if (!slot) out.erase(word);
      }
    };
    auto splice = [&](std::size_t at, std::size_t len, const Word& mid) {
      Word r(w.begin(), w.begin() + static_cast<long>(at));
      r.insert(r.end(), mid.begin(), mid.end());
      r.insert(r.end(), w.begin() + static_cast<long>(at + len), w.end());
      return r;
    };
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) {
        add(reduce(splice(i, 2, {w[i + 1], w[i]})), 1);
        for (const auto& [u, c] : sys_.straighten(w[i], w[i + 1]).terms()) add(reduce(splice(i, 2, sh.word(u))), c);
        return memo_[w] = out;
      }
    const auto p = p_.value();
    for (std::size_t i = 0; i + p <= w.size(); ++i) {
      bool run = true;
      for (std::size_t k = 1; k < p && run; ++k) run = w[i + k] == w[i];
      if (run) {
        for (const auto& [u, c] : sys_.frobenius(w[i]).terms()) add(reduce(splice(i, p, sh.word(u))), c);
        return memo_[w] = out;
      }
    }
    out[w] = 1;
    return memo_[w] = out;
  }

  Combination normal_form(const Word& w) {
    std::vector<Combination::Term> terms;
    for (const auto& [word, c] : reduce(w)) terms.emplace_back(sys_.shape().from_word(word), c);
    return Combination::from_unsorted(terms, p_);
  }

 private:
  const RewriteSystem& sys_;
  Prime p_;
  std::map<Word, std::map<Word, std::uint32_t>> memo_;
};

Word random_word(std::mt19937& rng, std::size_t gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), g(0, gens - 1);
  Word w(len(rng));
  for (auto& x : w) x = static_cast<Generator>(g(rng));
  return w;
}

}  // namespace

TEST_SUITE("pbw_rewrite") {
  TEST_CASE("PBW basis size is p^(n(R+1))") {
    for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {2u, 2u}, {3u, 0u}, {3u, 1u}, {5u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const RewriteSystem sys(e.splay, e.table);
      const auto basis = enumerate_pbw_basis(sys);
      CHECK(basis.size() == ipow(p, 2 * (level + 1)));
      CHECK(basis.front() == 0);
      for (std::size_t i = 1; i < basis.size(); ++i)
        CHECK(sys.shape().compare_monomials(basis[i - 1], basis[i]) < 0);
    }
  }

  TEST_CASE("normal forms of known words") {
    const Extracted t2(fixtures::t2(2, 1), 1);
    const RewriteSystem sys(t2.splay, t2.table);
    const auto& sh = sys.shape();
    CHECK(combination_text(sh, sys.normal_form(parse_word(sh, "y x^2"))) == "x^2 y + y");
    CHECK(combination_text(sh, sys.normal_form(parse_word(sh, "x^2 y"))) == "x^2 y");
    CHECK(combination_text(sh, sys.normal_form(parse_word(sh, "y y"))) == "0");

    const Extracted gm(fixtures::gm(2, 1), 1);
    const RewriteSystem gsys(gm.splay, gm.table);
    CHECK(combination_text(gsys.shape(), gsys.normal_form(parse_word(gsys.shape(), "x x"))) == "x");
  }

  TEST_CASE("normal form is idempotent") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const RewriteSystem sys(e.splay, e.table);
    const auto& sh = sys.shape();
    for (auto u : enumerate_pbw_basis(sys)) CHECK(sys.normal_form(sh.word(u)) == Combination::single(u, 1));
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto nf = sys.normal_form(random_word(rng, sh.generator_count(), 6));
      std::vector<WordTerm> again;
      for (const auto& [u, c] : nf.terms()) again.emplace_back(sh.word(u), c);
      REQUIRE(sys.normal_form(again) == nf);
    }
  }

  TEST_CASE("fast, naive and reference engines agree") {
    for (auto [p, level] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 0u}}) {
      const Extracted e(fixtures::t2(p, level), level);
      const RewriteSystem sys(e.splay, e.table);
      ReferenceRewriter ref(sys);
      std::mt19937 rng(p * 31 + level);
      for (int trial = 0; trial < 150; ++trial) {
        const auto w = random_word(rng, sys.shape().generator_count(), 7);
        const auto nf = sys.normal_form(w);
        INFO(word_text(sys.shape(), w));
        REQUIRE(sys.naive_normal_form(w) == nf);
        REQUIRE(ref.normal_form(w) == nf);
      }
    }
  }

  TEST_CASE("products of normal monomials") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const RewriteSystem sys(e.splay, e.table);
    const auto& sh = sys.shape();
    const auto& dist = *e.dist;
    for (std::uint32_t u = 0; u < sh.dimension(); u += 5)
      for (std::uint32_t v = 0; v < sh.dimension(); ++v) {
        auto w = sh.word(u);
        const auto wv = sh.word(v);
        w.insert(w.end(), wv.begin(), wv.end());
        const auto nf = sys.multiply(u, v);
        REQUIRE(nf == sys.normal_form(w));
        REQUIRE(dist.mult_to_additive(nf) == dist.mul(dist.mult_to_additive(u), dist.mult_to_additive(v)));
      }
  }

  TEST_CASE("rewrite steps lower the measure") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const RewriteSystem sys(e.splay, e.table);
    const auto& sh = sys.shape();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const auto w = random_word(rng, sh.generator_count(), 6);
      const auto step = sys.rewrite_step(w);
      if (!step) {
        CHECK(sys.normal_form(w).size() <= 1);
        continue;
      }
      for (const auto& [nw, c] : *step) CHECK(RewriteSystem::measure(sh, nw) < RewriteSystem::measure(sh, w));
    }
  }

  TEST_CASE("S-polynomials vanish on extracted systems") {
    const std::map<std::pair<unsigned, unsigned>, std::size_t> overlaps{
        {{2, 0}, 4}, {{2, 1}, 20}, {{3, 0}, 6}, {{3, 1}, 24}, {{5, 0}, 10}};
    for (const auto& [key, count] : overlaps) {
      const Extracted e(fixtures::t2(key.first, key.second), key.second);
      const RewriteSystem sys(e.splay, e.table);
      const auto report = s_polynomial_report(sys);
      CHECK(report.all_zero());
      CHECK(report.overlaps.size() == count);
      CHECK(report.to_check().passed());
    }
  }

  TEST_CASE("a zeroed entry breaks confluence at p = 3, R = 2") {
    const Extracted e(fixtures::t2(3, 2), 2);
    const auto& sh = e.splay->shape();
    CHECK(s_polynomial_report(RewriteSystem(e.splay, e.table)).all_zero());
    PoissonTable t = e.table;
    t.set(sh.generator(1, 1), sh.generator(0, 1), {});
    const RewriteSystem sys(e.splay, t);
    const auto report = s_polynomial_report(sys);
    CHECK_FALSE(report.all_zero());
    CHECK_FALSE(report.to_check().passed());
  }

  TEST_CASE("rules that do not lower the measure are refused") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    const auto x = sh.generator(0, 0), y = sh.generator(1, 0);
    t.set(y, x, Combination::single(sh.generator_code(x) + sh.generator_code(y), 1));
    CHECK_THROWS_AS(RewriteSystem(e.splay, t), AxiomError);
  }

  TEST_CASE("word parsing") {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    CHECK(parse_word(sh, "y x^3 x") == Word{sh.generator(1, 0), sh.generator(0, 1), sh.generator(0, 0)});
    CHECK(parse_word(sh, "1").empty());
    CHECK_THROWS_AS(parse_word(sh, "x^2"), DomainError);
    CHECK_THROWS_AS(parse_word(sh, "x 2"), ParseError);
    CHECK_THROWS_AS(parse_word(sh, "z"), ParseError);
    CHECK_THROWS_AS(parse_word(sh, "x^9"), DomainError);
  }
}
