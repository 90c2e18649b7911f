#include "fgdist/series.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "fgdist/error.hpp"

namespace fgdist {

VariableSet::VariableSet(std::vector<std::string> names, unsigned rank)
    : names_(std::move(names)), rank_(rank) {
  if (rank_ < 1 || rank_ > 3) throw DomainError("tensor rank must be 1, 2 or 3");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw DomainError("coordinate names must be unique");
  if (size() > MultiIndex::kCapacity) throw DomainError("too many formal variables");
}

std::string VariableSet::variable_name(std::size_t i) const {
  const std::string& base = names_[i % names_.size()];
  if (rank_ == 1) return base;
  return base + std::string(i / names_.size() + 1, '\'');
}

namespace {

using Accum = std::unordered_map<MultiIndex, std::uint32_t, MultiIndexHash>;

std::vector<TruncatedSeries::Term> drain(Accum& acc) {
  std::vector<TruncatedSeries::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) out.emplace_back(m, c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return multiindex_cmp_gradedlex(a.first, b.first) < 0;
  });
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries(VariableSet vars, unsigned cap, Prime p)
    : vars_(std::move(vars)), cap_(cap), p_(p) {}

TruncatedSeries TruncatedSeries::constant(VariableSet vars, unsigned cap, Prime p,
                                          std::int64_t c) {
  MultiIndex zero(vars.size());
  return monomial(std::move(vars), cap, p, zero, c);
}

TruncatedSeries TruncatedSeries::variable(VariableSet vars, unsigned cap, Prime p,
                                          std::size_t i) {
  if (i >= vars.size()) throw DomainError("variable index out of range");
  MultiIndex m(vars.size());
  m[i] = 1;
  return monomial(std::move(vars), cap, p, m);
}

TruncatedSeries TruncatedSeries::monomial(VariableSet vars, unsigned cap, Prime p,
                                          const MultiIndex& m, std::int64_t c) {
  return from_terms(std::move(vars), cap, p, {{m, p.reduce(c)}});
}

TruncatedSeries TruncatedSeries::from_terms(VariableSet vars, unsigned cap, Prime p,
                                            const std::vector<Term>& terms) {
  TruncatedSeries s(std::move(vars), cap, p);
  Accum acc;
  for (const auto& [m, c] : terms) {
    if (m.size() != s.vars_.size()) throw DomainError("exponent length does not match variables");
    if (m.degree() > cap) continue;
    auto& slot = acc[m];
    slot = p.add(slot, c % p.value());
  }
  s.terms_ = drain(acc);
  return s;
}

unsigned TruncatedSeries::order() const {
  return terms_.empty() ? 0 : terms_.front().first.degree();
}

FieldElement TruncatedSeries::coefficient(const MultiIndex& j) const {
  return FieldElement(residue(j), p_);
}

std::uint32_t TruncatedSeries::residue(const MultiIndex& j) const {
  if (j.size() != vars_.size()) throw DomainError("exponent length does not match variables");
  if (j.degree() > cap_)
    throw TruncationError("coefficient of degree " + std::to_string(j.degree()) +
                          " requested from a series truncated at " + std::to_string(cap_));
  auto it = std::lower_bound(terms_.begin(), terms_.end(), j, [](const Term& t, const MultiIndex& k) {
    return multiindex_cmp_gradedlex(t.first, k) < 0;
  });
  return (it != terms_.end() && it->first == j) ? it->second : 0;
}

std::uint32_t TruncatedSeries::constant_term() const {
  if (!terms_.empty() && terms_.front().first.degree() == 0) return terms_.front().second;
  return 0;
}

TruncatedSeries TruncatedSeries::truncated(unsigned cap) const {
  TruncatedSeries s(vars_, cap, p_);
  for (const auto& t : terms_)
    if (t.first.degree() <= cap) s.terms_.push_back(t);
  return s;
}

TruncatedSeries TruncatedSeries::filtered(const std::function<bool(const MultiIndex&)>& keep) const {
  TruncatedSeries s(vars_, cap_, p_);
  for (const auto& t : terms_)
    if (keep(t.first)) s.terms_.push_back(t);
  return s;
}

TruncatedSeries TruncatedSeries::relabeled(const VariableSet& target,
                                           const std::vector<std::size_t>& map) const {
  if (map.size() != vars_.size()) throw DomainError("relabel map has the wrong length");
  std::vector<Term> moved;
  moved.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    MultiIndex n(target.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) n[map.at(i)] = static_cast<MultiIndex::value_type>(n[map[i]] + m[i]);
    moved.emplace_back(n, c);
  }
  return from_terms(target, cap_, p_, moved);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (!(p_ == o.p_)) throw DomainError("series over different characteristics");
  if (!(vars_ == o.vars_)) throw DomainError("series over different variable sets");
  if (cap_ != o.cap_) throw DomainError("series with different truncation caps");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries s(vars_, cap_, p_);
  auto cmp = [](const Term& a, const Term& b) { return multiindex_cmp_gradedlex(a.first, b.first); };
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size() ? 1 : j == o.terms_.size() ? -1 : cmp(terms_[i], o.terms_[j]);
    if (c < 0) {
      s.terms_.push_back(terms_[i++]);
    } else if (c > 0) {
      s.terms_.push_back(o.terms_[j++]);
    } else {
      auto v = p_.add(terms_[i].second, o.terms_[j].second);
      if (v) s.terms_.emplace_back(terms_[i].first, v);
      ++i;
      ++j;
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(p_.neg(1 % p_.value())); }

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::scaled(std::uint32_t c) const {
  TruncatedSeries s(vars_, cap_, p_);
  c %= p_.value();
  if (!c) return s;
  s.terms_ = terms_;
  for (auto& t : s.terms_) t.second = p_.mul(t.second, c);
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries s(vars_, cap_, p_);
  if (terms_.empty() || o.terms_.empty()) return s;
  Accum acc;
  const std::size_t n = vars_.size();
  for (const auto& [a, ca] : terms_) {
    const unsigned da = a.degree();
    for (const auto& [b, cb] : o.terms_) {
      // terms are sorted by degree, so the rest of o is too large
      if (da + b.degree() > cap_) break;
      MultiIndex m(n);
      for (std::size_t k = 0; k < n; ++k) m[k] = static_cast<MultiIndex::value_type>(a[k] + b[k]);
      auto& slot = acc[m];
      slot = p_.add(slot, p_.mul(ca, cb));
    }
  }
  s.terms_ = drain(acc);
  return s;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_.variable_name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.p_ == b.p_ && a.vars_ == b.vars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
}

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g) { return f + g; }
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) { return f * g; }

TruncatedSeries series_pow(const TruncatedSeries& f, unsigned k) {
  auto result = TruncatedSeries::constant(f.vars(), f.cap(), f.prime(), 1);
  auto base = f;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images) {
  if (images.size() != f.vars().size()) throw DomainError("substitute needs one image per variable");
  if (images.empty()) throw DomainError("substitute needs a target variable set");
  const auto& target = images.front();
  for (const auto& img : images) {
    if (!(img.vars() == target.vars()) || img.cap() != target.cap() || !(img.prime() == f.prime()))
      throw DomainError("substitution images must share variables, cap and characteristic");
    if (img.constant_term() != 0) throw DomainError("substitution image with nonzero constant term");
  }
  if (target.cap() > f.cap())
    throw TruncationError("substitution target cap exceeds the source cap");

  const unsigned cap = target.cap();
  const Prime p = f.prime();
  // powers[v][e] = images[v]^e, built on demand
  std::vector<std::vector<TruncatedSeries>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const TruncatedSeries& {
    auto& row = powers[v];
    if (row.empty()) row.push_back(TruncatedSeries::constant(target.vars(), cap, p, 1));
    while (row.size() <= e) row.push_back(row.back() * images[v]);
    return row[e];
  };

  TruncatedSeries out(target.vars(), cap, p);
  Accum acc;
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() > cap) break;  // every image has order >= 1
    auto term = TruncatedSeries::constant(target.vars(), cap, p, c);
    for (std::size_t v = 0; v < m.size() && !term.is_zero(); ++v)
      if (m[v]) term = term * power(v, m[v]);
    for (const auto& [tm, tc] : term.terms()) {
      auto& slot = acc[tm];
      slot = p.add(slot, tc);
    }
  }
  std::vector<TruncatedSeries::Term> terms;
  for (auto& kv : acc) terms.push_back(kv);
  return TruncatedSeries::from_terms(target.vars(), cap, p, terms);
}

unsigned copy_degree(const MultiIndex& m, const VariableSet& vars, unsigned copy) {
  unsigned d = 0;
  for (std::size_t j = 0; j < vars.coordinates(); ++j) d += m[vars.index(copy, j)];
  return d;
}

}  // namespace fgdist
