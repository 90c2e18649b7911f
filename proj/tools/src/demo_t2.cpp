#include <functional>
#include <iostream>

#include <fgdist/dist.hpp>
#include <fgdist/io.hpp>

#include "law_source.hpp"

namespace fgdist::cli {

namespace {

// One family of closed forms; every instance is compared with the pairing.
struct Family {
  explicit Family(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::string witness;
  std::string detail;

  void check(bool ok, const std::string& instance, const std::string& got, const std::string& want) {
    ++cases;
    if (!ok && witness.empty()) {
      witness = instance;
      detail = "pairing " + got + ", closed form " + want;
    }
  }
};

}  // namespace

int demo_t2(unsigned pv, unsigned level, bool as_json) {
  const Prime p(pv);
  const DistLevel dist(builtin_t2(p, default_cap(p, level, 2)), level);
  const std::uint64_t bound = dist.shape().bound();

  auto d = [&](std::uint64_t a, std::uint64_t b, std::int64_t c = 1) {
    return dist.basis(MultiIndex{static_cast<unsigned>(a), static_cast<unsigned>(b)}, c);
  };
  auto power = [&](unsigned t) { return ipow(pv, t); };
  auto label = [](const std::string& s, unsigned r, unsigned s2) {
    return s + " r=" + std::to_string(r) + " s=" + std::to_string(s2);
  };

  Family xy{"delta_{x^{p^r}} delta_{y^{p^s}}"};
  Family yx{"delta_{y^{p^s}} delta_{x^{p^r}}"};
  Family comm{"commutator pi_c(delta_{x^{p^r}}, delta_{y^{p^s}})"};
  Family frob{"Frobenius: delta_{x^{p^r}}^p = delta_{x^{p^r}}, delta_{y^{p^r}}^p = 0"};
  Family gm{"delta_{x^{p^r}} delta_{x^m} = (m_r+1) delta_{x^{m+p^r}} + m_r delta_{x^m}"};
  Family mixed{"delta_{x^{p^r}} delta_{x^m y^{p^s}} recursion"};

  for (unsigned r = 0; r <= level; ++r)
    for (unsigned s = 0; s <= level; ++s) {
      const auto pr = power(r), ps = power(s);
      const auto x = d(pr, 0), y = d(0, ps);

      auto want = r < s ? d(pr, ps) : dist.add(d(pr, ps), d(pr - ps, ps));
      auto got = dist.mul(x, y);
      xy.check(got == want, label("", r, s), dist.to_text(got), dist.to_text(want));

      // sum over 0 <= k <= p^{r-s} of (-1)^k delta_{x^{p^r - k p^s} y^{p^s}}
      const std::uint64_t kmax = r < s ? 0 : power(r - s);
      Distribution alt = dist.zero();
      for (std::uint64_t k = 0; k <= kmax; ++k) alt = dist.add(alt, d(pr - k * ps, ps, k % 2 ? -1 : 1));
      got = dist.mul(y, x);
      yx.check(got == alt, label("", r, s), dist.to_text(got), dist.to_text(alt));

      Distribution c = dist.zero();
      if (r >= s) {
        c = d(pr - ps, ps, 2);
        for (std::uint64_t k = 2; k <= kmax; ++k) c = dist.add(c, d(pr - k * ps, ps, k % 2 ? 1 : -1));
      }
      got = dist.commutator(x, y);
      comm.check(got == c, label("", r, s), dist.to_text(got), dist.to_text(c));

      for (std::uint64_t m = 0; m + pr <= bound; ++m) {
        const auto mr = padic_digit(m, p, r);
        if (mr >= pv - 1) continue;
        const auto inst = label("m=" + std::to_string(m), r, s);
        if (s == 0) {
          auto g = dist.mul(x, d(m, 0));
          auto w = dist.add(d(m + pr, 0, mr + 1), d(m, 0, mr));
          gm.check(g == w, inst, dist.to_text(g), dist.to_text(w));
        }
        // k runs over the support of both binomials
        auto g = dist.mul(x, d(m, ps));
        auto w = dist.add(d(m + pr, ps, mr + 1), d(m, ps, mr));
        for (long k = std::max<long>(static_cast<long>(m), static_cast<long>(pr) - static_cast<long>(ps));
             k <= static_cast<long>(m + pr) - static_cast<long>(ps); ++k) {
          const auto lower = static_cast<long>(m + pr) - static_cast<long>(ps) - k;
          const auto c1 = binom_residue(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k) - m, p);
          const auto c2 = binom_residue(m, static_cast<std::uint64_t>(lower), p);
          if (c1 && c2) w = dist.add(w, d(static_cast<std::uint64_t>(k), ps, p.mul(c1, c2)));
        }
        mixed.check(g == w, inst, dist.to_text(g), dist.to_text(w));
      }
    }
  for (unsigned r = 0; r <= level; ++r) {
    const auto x = d(power(r), 0), y = d(0, power(r));
    auto xp = x, yp = y;
    for (unsigned k = 1; k < pv; ++k) {
      xp = dist.mul(xp, x);
      yp = dist.mul(yp, y);
    }
    frob.check(xp == x, "x r=" + std::to_string(r), dist.to_text(xp), dist.to_text(x));
    frob.check(yp == dist.zero(), "y r=" + std::to_string(r), dist.to_text(yp), "0");
  }

  CheckReport report;
  for (const auto* f : {&xy, &yx, &comm, &frob, &gm, &mixed}) {
    if (f->witness.empty()) report.pass(f->name, std::to_string(f->cases) + (f->cases == 1 ? " case" : " cases"));
    else report.fail(f->name, f->witness, f->detail);
  }
  if (as_json) {
    auto j = report_to_json(report);
    j["p"] = pv;
    j["level"] = level;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "T2 at p=" << pv << ", R=" << level << ", closed forms against the pairing\n" << report.to_text();
  }
  return report.passed() ? ok : refused;
}

}  // namespace fgdist::cli
