// One line per acceptance criterion. Closed forms are written out here
// independently of the library and of the CLI demo.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fgdist/reconstruct.hpp>

#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

using namespace fgdist;
using fixtures::Extracted;

namespace {

struct Outcome {
  bool ok = true;
  std::size_t cases = 0;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    ++cases;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

std::string grid(unsigned p, unsigned level) { return "p=" + std::to_string(p) + " R=" + std::to_string(level); }

// Sum of c * delta_{x^a y^b} from a map (a, b) -> c.
Distribution from_map(const DistLevel& dist, const std::map<std::pair<std::uint64_t, std::uint64_t>, long>& m) {
  auto acc = dist.zero();
  for (const auto& [ab, c] : m)
    acc = dist.add(acc, dist.basis(MultiIndex{static_cast<unsigned>(ab.first), static_cast<unsigned>(ab.second)}, c));
  return acc;
}

std::uint64_t pw(unsigned p, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= p;
  return r;
}

const std::vector<std::pair<unsigned, unsigned>> kT2Grid = {{2, 0}, {2, 1}, {2, 2}, {3, 0},
                                                            {3, 1}, {3, 2}, {5, 0}, {5, 1}};

Outcome criterion1() {
  Outcome o;
  for (auto [p, level] : kT2Grid) {
    const DistLevel dist(fixtures::t2(p, level), level);
    for (unsigned r = 0; r <= level; ++r)
      for (unsigned s = 0; s <= level; ++s) {
        const auto pr = pw(p, r), ps = pw(p, s);
        const auto x = dist.generator(0, r), y = dist.generator(1, s);
        const auto tag = grid(p, level) + " r=" + std::to_string(r) + " s=" + std::to_string(s);

        std::map<std::pair<std::uint64_t, std::uint64_t>, long> xy{{{pr, ps}, 1}};
        if (r >= s) xy[{pr - ps, ps}] += 1;
        o.expect(dist.mul(x, y) == from_map(dist, xy), "x*y " + tag);

        std::map<std::pair<std::uint64_t, std::uint64_t>, long> yx;
        const std::uint64_t kmax = r >= s ? pw(p, r - s) : 0;
        for (std::uint64_t k = 0; k <= kmax; ++k) yx[{pr - k * ps, ps}] += k % 2 ? -1 : 1;
        o.expect(dist.mul(y, x) == from_map(dist, yx), "y*x " + tag);
      }
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (auto [p, level] : kT2Grid) {
    const Extracted e(fixtures::t2(p, level), level);
    const auto& dist = *e.dist;
    const auto& sh = e.splay->shape();
    for (unsigned r = 0; r <= level; ++r)
      for (unsigned s = 0; s <= level; ++s) {
        const auto pr = pw(p, r), ps = pw(p, s);
        std::map<std::pair<std::uint64_t, std::uint64_t>, long> want;
        if (r >= s) {
          want[{pr - ps, ps}] += 2;
          for (std::uint64_t k = 2; k <= pw(p, r - s); ++k) want[{pr - k * ps, ps}] -= k % 2 ? -1 : 1;
        }
        const auto got = dist.mult_to_additive(e.table.bracket(sh.generator(0, r), sh.generator(1, s)));
        o.expect(got == from_map(dist, want), grid(p, level) + " r=" + std::to_string(r) + " s=" + std::to_string(s));
      }
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned level = 0; level <= 2; ++level) {
      const DistLevel dist(fixtures::gm(p, level), level);
      const auto bound = dist.shape().bound();
      oracle::PairingOracle pairing{{oracle::multiplicative(1, 0, p, static_cast<int>(bound))}, 1, p,
                                    static_cast<int>(bound), {}};
      for (unsigned r = 0; r <= level; ++r) {
        const auto pr = pw(p, r);
        for (std::uint64_t m = 0; m + pr <= bound; ++m) {
          const auto mr = (m / pr) % p;
          if (mr >= p - 1) continue;
          const auto tag = grid(p, level) + " r=" + std::to_string(r) + " m=" + std::to_string(m);
          const auto closed = dist.add(dist.basis(MultiIndex{static_cast<unsigned>(m + pr)}, static_cast<long>(mr + 1)),
                                       dist.basis(MultiIndex{static_cast<unsigned>(m)}, static_cast<long>(mr)));
          // the test-side pairing is the authority
          auto ref = dist.zero();
          for (const auto& [k, c] : pairing.product({static_cast<int>(pr)}, {static_cast<int>(m)}))
            ref = dist.add(ref, dist.basis(MultiIndex{static_cast<unsigned>(k[0])}, c));
          o.expect(ref == closed, "closed form vs pairing " + tag);
          o.expect(dist.mul(dist.generator(0, r), dist.basis(MultiIndex{static_cast<unsigned>(m)})) == ref,
                   "dist_mul vs pairing " + tag);
        }
      }
    }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned level = 0; level <= 2; ++level) {
      const DistLevel gm(fixtures::gm(p, level), level);
      const DistLevel ga(fixtures::ga(p, level), level);
      for (unsigned r = 0; r <= level; ++r) {
        const auto tag = grid(p, level) + " r=" + std::to_string(r);
        auto xp = gm.unit(), yp = ga.unit();
        for (unsigned k = 0; k < p; ++k) {
          xp = gm.mul(xp, gm.generator(0, r));
          yp = ga.mul(yp, ga.generator(0, r));
        }
        o.expect(xp == gm.generator(0, r), "G_m power " + tag);
        o.expect(gm.frobenius_power(gm.shape().generator(0, r)) == gm.generator(0, r), "G_m F " + tag);
        o.expect(yp == ga.zero(), "G_a power " + tag);
        o.expect(ga.frobenius_power(ga.shape().generator(0, r)) == ga.zero(), "G_a F " + tag);
      }
    }
  for (auto [p, level] : kT2Grid) {
    const DistLevel dist(fixtures::t2(p, level), level);
    const auto& sh = dist.shape();
    for (Generator eta = 0; eta < sh.generator_count(); ++eta) {
      const auto r = sh.power_of(eta);
      const auto f = dist.frobenius_power(eta);
      o.expect(f.terms.empty() || dist.filtration_degree(f) <= pw(p, r + 1) - 1,
               "deg F " + grid(p, level) + " " + sh.generator_name(eta));
      for (Generator zeta = 0; zeta < sh.generator_count(); ++zeta) {
        const auto s = sh.power_of(zeta);
        const auto c = dist.commutator(dist.generator(sh.coord_of(eta), r), dist.generator(sh.coord_of(zeta), s));
        o.expect(c.terms.empty() || dist.filtration_degree(c) <= pw(p, r) + pw(p, s) - 1,
                 "deg pi_c " + grid(p, level) + " " + sh.generator_name(eta) + "," + sh.generator_name(zeta));
      }
    }
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto roundtrip = [&](const DistLevel& dist, const std::string& tag) {
    for (std::uint32_t u = 0; u < dist.dimension(); ++u) {
      o.expect(dist.additive_to_mult(dist.mult_to_additive(u)) == Combination::single(u, 1), tag + " monomial");
      o.expect(dist.mult_to_additive(dist.additive_to_mult(dist.basis_element(u))) == dist.basis_element(u),
               tag + " additive");
    }
  };
  std::vector<std::pair<unsigned, unsigned>> single;
  for (unsigned p : {2u, 3u})
    for (unsigned level = 0; level <= 2; ++level) single.emplace_back(p, level);
  single.emplace_back(5, 0);
  single.emplace_back(5, 1);
  for (auto [p, level] : single) {
    const Prime pr(p);
    const DistLevel ga(fixtures::ga(p, level), level);
    const DistLevel gm(fixtures::gm(p, level), level);
    if (p != 5) {
      roundtrip(ga, "G_a " + grid(p, level));
      roundtrip(gm, "G_m " + grid(p, level));
    }
    for (std::uint64_t n = 0; n <= ga.shape().bound(); ++n) {
      const auto tag = grid(p, level) + " n=" + std::to_string(n);
      const auto fact = static_cast<std::uint32_t>(oracle::padic_factorial(static_cast<long>(n), p));
      const auto inv_fact = static_cast<long>(pr.inv(fact));
      // G_a: (1/n!_p) prod_t delta_{y^{p^t}}^{n_t}
      auto a = ga.unit();
      // G_m: (1/n!_p) prod_t prod_{k<n_t} (delta_{x^{p^t}} - k)
      auto m = gm.unit();
      std::uint64_t rest = n;
      for (unsigned t = 0; rest; ++t, rest /= p) {
        for (std::uint64_t k = 0; k < rest % p; ++k) {
          a = ga.mul(a, ga.generator(0, t));
          m = gm.mul(m, gm.sub(gm.generator(0, t), gm.scale(gm.unit(), static_cast<long>(k))));
        }
      }
      o.expect(ga.scale(a, inv_fact) == ga.basis(MultiIndex{static_cast<unsigned>(n)}), "G_a formula " + tag);
      o.expect(gm.scale(m, inv_fact) == gm.basis(MultiIndex{static_cast<unsigned>(n)}), "G_m formula " + tag);
    }
  }
  for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {3u, 0u}, {3u, 1u}}) {
    const DistLevel dist(fixtures::t2(p, level), level);
    roundtrip(dist, "T2 " + grid(p, level));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {3u, 0u}, {3u, 1u}}) {
    for (const auto& law : {fixtures::ga(p, level), fixtures::gm(p, level), fixtures::t2(p, level)}) {
      const Extracted e(law, level);
      const RewriteSystem sys(e.splay, e.table);
      const auto& sh = sys.shape();
      const auto tag = law.coords().size() == 2 ? "T2 " + grid(p, level) : law.coords()[0] + " " + grid(p, level);
      const auto basis = enumerate_pbw_basis(sys);
      o.expect(basis.size() == pw(p, static_cast<unsigned>(law.coords().size()) * (level + 1)), "basis size " + tag);
      for (auto u : basis) {
        o.expect(sys.normal_form(sh.word(u)) == Combination::single(u, 1), "NF of a normal word " + tag);
        for (auto v : basis) {
          auto w = sh.word(u);
          const auto wv = sh.word(v);
          w.insert(w.end(), wv.begin(), wv.end());
          const auto nf = sys.normal_form(w);
          std::vector<WordTerm> again;
          for (const auto& [k, c] : nf.terms()) again.emplace_back(sh.word(k), c);
          o.expect(sys.normal_form(again) == nf, "NF idempotent " + tag);
        }
      }
      o.expect(s_polynomial_report(sys).all_zero(), "S-polynomials " + tag);
    }
  }
  return o;
}

bool fails_on(const CheckReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return !e.passed;
  return false;
}

Outcome criterion7() {
  Outcome o;
  for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {3u, 0u}, {3u, 1u}, {5u, 0u}}) {
    const Extracted e(fixtures::t2(p, level), level);
    o.expect(check_poisson_axioms(e.table).passed(), "extracted table " + grid(p, level));
  }
  {
    // negated entry: (x^3, y) stored as +pi(y, x^3) instead of -pi(y, x^3)
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    PoissonTable t = e.table;
    t.set(sh.generator(0, 1), sh.generator(1, 0), e.table.bracket(sh.generator(1, 0), sh.generator(0, 1)));
    o.expect(fails_on(check_skew_and_constants(t), "skew-symmetry"), "skew mutation");
  }
  {
    // zeroed entry pi(y^3, x^3), at the level where Jacobi can see it
    const Extracted e(fixtures::t2(3, 2), 2);
    const auto& sh = e.splay->shape();
    o.expect(check_poisson_axioms(e.table).passed(), "extracted table " + grid(3, 2));
    PoissonTable t = e.table;
    t.set(sh.generator(1, 1), sh.generator(0, 1), {});
    o.expect(fails_on(check_jacobi(t), "Jacobi identity"), "Jacobi mutation");
  }
  {
    const Extracted e(fixtures::t2(3, 1), 1);
    const auto& sh = e.splay->shape();
    const auto x = sh.generator(0, 0), y = sh.generator(1, 0);
    PoissonTable inflated = e.table;
    inflated.set(y, x, Combination::single(sh.generator_code(x) + sh.generator_code(y), 1));
    o.expect(fails_on(check_strongly_filtered(inflated), "strong filtration"), "filtration mutation");
    PoissonTable constant = e.table;
    constant.set(y, x, Combination::single(0, 1));
    o.expect(fails_on(check_strongly_multiplicative(constant), "strong multiplicativity"),
             "strong multiplicativity mutation");
  }
  return o;
}

struct Case {
  std::string name;
  FormalGroupLaw law;
  unsigned level;
};

std::vector<Case> round_trip_cases() {
  std::vector<Case> cases;
  for (unsigned p : {2u, 3u})
    for (unsigned level : {0u, 1u}) {
      cases.push_back({"G_a " + grid(p, level), fixtures::ga(p, level), level});
      cases.push_back({"G_m " + grid(p, level), fixtures::gm(p, level), level});
      cases.push_back({"G_a x G_m " + grid(p, level), fixtures::ga_gm(p, level), level});
      cases.push_back({"T2 " + grid(p, level), fixtures::t2(p, level), level});
    }
  cases.push_back({"T2 " + grid(5, 0), fixtures::t2(5, 0), 0});
  return cases;
}

Outcome criterion8(std::vector<ReconstructedAlgebra>& built) {
  Outcome o;
  for (const auto& c : round_trip_cases()) {
    const Extracted e(c.law, c.level);
    auto U = build_U(e.splay, e.table);
    const auto r = compare_with_oracle(U, *e.dist);
    const std::size_t constants = std::size_t{U.dimension()} * U.dimension();
    o.expect(r.passed() && r.entries.front().detail ==
                               "identical on " + std::to_string(constants) + " structure constants",
             c.name + (r.passed() ? "" : " at " + r.first_failure()->witness));
    if (c.name == "T2 " + grid(2, 1)) o.expect(constants == 256, "T2 p=2 R=1 has 256 structure constants");
    built.push_back(std::move(U));
  }
  return o;
}

Outcome criterion9(const std::vector<ReconstructedAlgebra>& built) {
  Outcome o;
  const auto cases = round_trip_cases();
  o.expect(built.size() == cases.size(), "every algebra of criterion 8 was built");
  for (std::size_t i = 0; i < built.size(); ++i) {
    const auto r = dvps_verify(built[i]);
    o.expect(r.passed(), cases[i].name + (r.passed() ? "" : " " + r.first_failure()->name));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (auto [p, level] : {std::pair{2u, 0u}, {2u, 1u}, {3u, 0u}, {3u, 1u}}) {
    const Extracted e(fixtures::t2(p, level), level);
    const auto r = swap_order_equivalence(e.splay, e.table, 0);
    o.expect(r.passed(), grid(p, level) + (r.passed() ? "" : " " + r.first_failure()->witness));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  std::vector<ReconstructedAlgebra> built;
  const std::vector<Criterion> criteria = {
      {1, "T2 product formulas", 30, criterion1},
      {2, "T2 commutator", 0, criterion2},
      {3, "G_m recursion", 0, criterion3},
      {4, "Frobenius powers and filtration bounds", 0, criterion4},
      {5, "basis change and G_a, G_m formulas", 0, criterion5},
      {6, "PBW basis, idempotence, S-polynomials", 60, criterion6},
      {7, "Poisson axioms and mutations", 0, criterion7},
      {8, "reconstruction round trip", 120, [&] { return criterion8(built); }},
      {9, "DVPS verification", 0, [&] { return criterion9(built); }},
      {10, "order-swap equivalence", 0, criterion10},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool ok = o.ok && in_time;
    if (!ok) ++failed;
    std::string note = std::to_string(o.cases) + (o.cases == 1 ? " case" : " cases");
    if (!o.ok) note += ", first failure: " + o.first_failure;
    if (!in_time) note += ", over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit";
    std::printf("[%s] criterion %d: %s (%s, %.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, note.c_str(), secs);
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
