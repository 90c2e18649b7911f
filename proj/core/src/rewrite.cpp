#include "fgdist/rewrite.hpp"

#include <algorithm>
#include <map>

#include "fgdist/error.hpp"

namespace fgdist {

std::string word_text(const LevelShape& shape, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto g : w) {
    if (!s.empty()) s += " ";
    s += shape.generator_name(g);
  }
  return s;
}

RewriteSystem::RewriteSystem(std::shared_ptr<const SplayDescription> splay, const PoissonTable& table)
    : splay_(std::move(splay)) {
  if (!splay_) throw DomainError("rewrite system needs a splay");
  if (!(table.splay().shape() == splay_->shape())) throw DomainError("table and splay disagree on the level");
  const auto& sh = shape();
  const std::size_t gens = sh.generator_count();
  const Prime p = prime();

  for (Generator g = 0; g < gens; ++g)
    for (const auto& [u, c] : frobenius(g).terms())
      if (sh.degree(u) >= p.value() * sh.weight(g))
        throw AxiomError("frobenius degree", "F(" + sh.generator_name(g) + ") has term " + monomial_text(sh, u));

  straighten_.resize(gens * gens);
  for (Generator eta = 0; eta < gens; ++eta)
    for (Generator zeta = 0; zeta < eta; ++zeta) {
      if (splay_->block_of_generator(eta) == splay_->block_of_generator(zeta)) continue;
      auto v = table.bracket(eta, zeta);
      const std::uint64_t bound = sh.weight(eta) + sh.weight(zeta) - 1;
      for (const auto& [u, c] : v.terms())
        if (sh.degree(u) > bound)
          throw AxiomError("strong filtration", "pi(" + sh.generator_name(eta) + ", " + sh.generator_name(zeta) +
                                                    ") has term " + monomial_text(sh, u) + " of degree " +
                                                    std::to_string(sh.degree(u)) + " > " + std::to_string(bound));
      straighten_[eta * gens + zeta] = std::move(v);
    }
  memo_.resize(static_cast<std::size_t>(sh.dimension()) * gens);
}

const Combination& RewriteSystem::straighten(Generator eta, Generator zeta) const {
  return straighten_.at(static_cast<std::size_t>(eta) * shape().generator_count() + zeta);
}

const Combination& RewriteSystem::multiply_generator(std::uint32_t u, Generator g) const {
  const auto& sh = shape();
  const std::size_t gens = sh.generator_count();
  if (g >= gens) throw DomainError("generator outside the level");
  const std::size_t slot = static_cast<std::size_t>(u) * gens + g;
  {
    std::shared_lock lock(memo_mutex_);
    if (memo_.at(slot)) return *memo_[slot];
  }
  const Prime p = prime();
  // largest generator present in u
  int last = -1;
  for (int h = static_cast<int>(gens) - 1; h >= 0; --h)
    if (sh.digit(u, static_cast<Generator>(h))) {
      last = h;
      break;
    }

  Combination result;
  if (last < static_cast<int>(g)) {
    result = Combination::single(u + sh.generator_code(g), 1);
  } else if (last == static_cast<int>(g)) {
    if (sh.digit(u, g) + 1 < p.value()) {
      result = Combination::single(u + sh.generator_code(g), 1);
    } else {
      const std::uint32_t base = u - (p.value() - 1) * sh.generator_code(g);
      result = multiply(Combination::single(base, 1), frobenius(g));
    }
  } else {
    const auto h = static_cast<Generator>(last);
    const std::uint32_t rest = u - sh.generator_code(h);
    // u g = rest h g -> rest g h + rest pi(h, g)
    SparseBuilder<std::uint32_t> acc(p);
    const auto& left = multiply_generator(rest, g);
    for (const auto& [x, c] : left.terms()) acc.add(multiply_generator(x, h), c);
    const auto& br = straighten(h, g);
    if (!br.empty()) acc.add(multiply(Combination::single(rest, 1), br), 1);
    result = acc.finish();
  }
  auto built = std::make_shared<const Combination>(std::move(result));
  std::unique_lock lock(memo_mutex_);
  if (!memo_[slot]) memo_[slot] = std::move(built);
  return *memo_[slot];
}

Combination RewriteSystem::multiply(std::uint32_t u, std::uint32_t v) const {
  Combination cur = Combination::single(u, 1);
  for (auto g : shape().word(v)) {
    SparseBuilder<std::uint32_t> acc(prime());
    for (const auto& [x, c] : cur.terms()) acc.add(multiply_generator(x, g), c);
    cur = acc.finish();
  }
  return cur;
}

Combination RewriteSystem::multiply(const Combination& a, const Combination& b) const {
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) acc.add(multiply(u, v), prime().mul(cu, cv));
  return acc.finish();
}

Combination RewriteSystem::normal_form(const Word& w) const {
  Combination cur = Combination::single(0, 1);
  for (auto g : w) {
    SparseBuilder<std::uint32_t> acc(prime());
    for (const auto& [x, c] : cur.terms()) acc.add(multiply_generator(x, g), c);
    cur = acc.finish();
  }
  return cur;
}

Combination RewriteSystem::normal_form(const std::vector<WordTerm>& elem) const {
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [w, c] : elem) acc.add(normal_form(w), c % prime().value());
  return acc.finish();
}

std::pair<std::uint64_t, std::uint64_t> RewriteSystem::measure(const LevelShape& shape, const Word& w) {
  std::uint64_t inversions = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) inversions += w[i] > w[j];
  return {shape.word_degree(w), inversions};
}

namespace {

Word splice(const Word& w, std::size_t from, std::size_t to, const Word& middle) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(from));
  out.insert(out.end(), middle.begin(), middle.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(to), w.end());
  return out;
}

// Replace w[from, to) by a combination of normal monomials.
void splice_combination(std::vector<WordTerm>& out, const LevelShape& shape, const Word& w, std::size_t from,
                        std::size_t to, const Combination& c, std::uint32_t scale, Prime p) {
  for (const auto& [u, v] : c.terms()) out.emplace_back(splice(w, from, to, shape.word(u)), p.mul(v, scale));
}

}  // namespace

std::optional<std::vector<WordTerm>> RewriteSystem::rewrite_step(const Word& w) const {
  const auto& sh = shape();
  const std::uint32_t p = prime().value();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i + 1 < w.size() && w[i] > w[i + 1]) {
      std::vector<WordTerm> out;
      out.emplace_back(splice(w, i, i + 2, {w[i + 1], w[i]}), 1);
      splice_combination(out, sh, w, i, i + 2, straighten(w[i], w[i + 1]), 1, prime());
      return out;
    }
    if (i + p <= w.size() && std::all_of(w.begin() + static_cast<std::ptrdiff_t>(i),
                                         w.begin() + static_cast<std::ptrdiff_t>(i + p),
                                         [&](Generator g) { return g == w[i]; })) {
      std::vector<WordTerm> out;
      splice_combination(out, sh, w, i, i + p, frobenius(w[i]), 1, prime());
      return out;
    }
  }
  return std::nullopt;
}

Combination RewriteSystem::naive_normal_form(const Word& w) const {
  const auto& sh = shape();
  const Prime p = prime();
  auto word_less = [&](const Word& a, const Word& b) { return sh.compare_words(a, b) < 0; };
  std::map<Word, std::uint32_t, decltype(word_less)> pending(word_less);
  pending[w] = 1;
  SparseBuilder<std::uint32_t> done(p);
  while (!pending.empty()) {
    auto it = std::prev(pending.end());  // largest word first
    Word cur = it->first;
    std::uint32_t c = it->second;
    pending.erase(it);
    if (!c) continue;
    auto step = rewrite_step(cur);
    if (!step) {
      done.add(sh.from_word(cur), c);
      continue;
    }
    const auto before = measure(sh, cur);
    for (auto& [nw, nc] : *step) {
      if (!(measure(sh, nw) < before))
        throw Error("rewrite measure did not decrease: " + word_text(sh, cur) + " -> " + word_text(sh, nw));
      auto& slot = pending[nw];
      slot = p.add(slot, p.mul(nc, c));
    }
  }
  return done.finish();
}

bool SPolynomialReport::all_zero() const {
  return std::all_of(overlaps.begin(), overlaps.end(), [](const Overlap& o) { return o.residue.empty(); });
}

std::string SPolynomialReport::to_text(const LevelShape& shape) const {
  std::string s;
  std::size_t bad = 0;
  for (const auto& o : overlaps) {
    if (o.residue.empty()) continue;
    ++bad;
    s += o.kind + " [" + word_text(shape, o.word) + "]: residue " + combination_text(shape, o.residue) + "\n";
  }
  if (!bad) s += "all S-polynomials reduce to 0 (" + std::to_string(overlaps.size()) + " overlaps)\n";
  else s += std::to_string(bad) + " of " + std::to_string(overlaps.size()) + " overlaps leave a residue\n";
  return s;
}

CheckReport SPolynomialReport::to_check() const {
  CheckReport r;
  for (const auto& o : overlaps)
    if (!o.residue.empty()) {
      r.fail("confluence", o.kind);
      return r;
    }
  r.pass("confluence", std::to_string(overlaps.size()) + " overlaps");
  return r;
}

SPolynomialReport s_polynomial_report(const RewriteSystem& sys) {
  const auto& sh = sys.shape();
  const Prime p = sys.prime();
  const auto gens = static_cast<Generator>(sh.generator_count());
  const std::uint32_t q = p.value();
  SPolynomialReport report;

  auto residue = [&](const std::vector<WordTerm>& a, const std::vector<WordTerm>& b) {
    return sys.normal_form(a).minus(sys.normal_form(b), p);
  };
  // g applied to the pair starting at position i of w
  auto apply_g = [&](const Word& w, std::size_t i) {
    std::vector<WordTerm> out;
    out.emplace_back(splice(w, i, i + 2, {w[i + 1], w[i]}), 1);
    splice_combination(out, sh, w, i, i + 2, sys.straighten(w[i], w[i + 1]), 1, p);
    return out;
  };
  auto apply_f = [&](const Word& w, std::size_t i) {
    std::vector<WordTerm> out;
    splice_combination(out, sh, w, i, i + q, sys.frobenius(w[i]), 1, p);
    return out;
  };

  for (Generator k = 0; k < gens; ++k)
    for (Generator j = 0; j < k; ++j)
      for (Generator i = 0; i < j; ++i) {
        Word w{k, j, i};
        report.overlaps.push_back({"S3", w, residue(apply_g(w, 0), apply_g(w, 1))});
      }
  for (Generator hi = 0; hi < gens; ++hi)
    for (Generator lo = 0; lo < hi; ++lo) {
      // zeta eta^p with zeta = hi >> eta = lo
      Word w1{hi};
      w1.insert(w1.end(), q, lo);
      report.overlaps.push_back({"S1", w1, residue(apply_g(w1, 0), apply_f(w1, 1))});
      // eta^p zeta with eta = hi >> zeta = lo
      Word w2(q, hi);
      w2.push_back(lo);
      report.overlaps.push_back({"S2", w2, residue(apply_f(w2, 0), apply_g(w2, q - 1))});
    }
  for (Generator g = 0; g < gens; ++g)
    for (std::uint32_t k = 1; k < q; ++k) {
      Word w(q + k, g);
      report.overlaps.push_back({"power", w, residue(apply_f(w, 0), apply_f(w, k))});
    }

  std::stable_sort(report.overlaps.begin(), report.overlaps.end(),
                   [&](const Overlap& a, const Overlap& b) { return sh.compare_words(a.word, b.word) < 0; });
  return report;
}

std::vector<std::uint32_t> enumerate_pbw_basis(const RewriteSystem& sys) {
  const auto& sh = sys.shape();
  std::vector<std::uint32_t> basis(sh.dimension());
  for (std::uint32_t u = 0; u < sh.dimension(); ++u) basis[u] = u;
  std::sort(basis.begin(), basis.end(),
            [&](std::uint32_t a, std::uint32_t b) { return sh.compare_monomials(a, b) < 0; });
  return basis;
}

}  // namespace fgdist
