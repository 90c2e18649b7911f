#include "fgdist/dist.hpp"

#include <algorithm>
#include <atomic>

#include "fgdist/error.hpp"

namespace fgdist {

namespace {
std::atomic<std::uint64_t> next_level_id{1};
}

DistLevel::DistLevel(FormalGroupLaw law, unsigned level)
    : law_(std::move(law)), shape_(law_.prime(), law_.coords(), level), id_(next_level_id++) {
  const std::uint32_t dim = shape_.dimension();
  const std::size_t n = shape_.coordinates();
  const std::uint32_t bound = shape_.bound();

  degree_.resize(dim);
  by_degree_.resize(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    degree_[i] = static_cast<std::uint16_t>(shape_.degree(i));
    by_degree_[i] = i;
  }
  std::stable_sort(by_degree_.begin(), by_degree_.end(),
                   [this](std::uint32_t a, std::uint32_t b) { return degree_[a] < degree_[b]; });

  // Closure of the level: in characteristic p, m(x_j)^{p^{R+1}} is the sum of
  // p^{R+1}-th powers of the terms of m(x_j), so it leaves the box as soon as
  // m(x_j) has no constant term.
  for (std::size_t j = 0; j < n; ++j)
    if (law_.comul(j).constant_term() != 0)
      throw AxiomError("counit", "m(" + law_.coords()[j] + ") has a constant term");

  comul_terms_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [m, c] : law_.comul(j).terms()) {
      MultiIndex l(n), r(n);
      bool inside = true;
      for (std::size_t k = 0; k < n; ++k) {
        l[k] = m[k];
        r[k] = m[n + k];
        inside = inside && l[k] <= bound && r[k] <= bound;
      }
      if (inside) comul_terms_[j].push_back({shape_.index(l), shape_.index(r), c});
    }
  }
  expansions_.resize(dim);
  monomials_.resize(dim);
}

void DistLevel::check_level(const Distribution& a) const {
  if (a.level_id != id_) throw DomainError("distribution from a different level");
}

Distribution DistLevel::basis_element(std::uint32_t idx, std::uint32_t coeff) const {
  if (idx >= dimension()) throw DomainError("basis index outside the level");
  return {id_, Combination::single(idx, coeff % prime().value())};
}

Distribution DistLevel::basis(const MultiIndex& j, std::int64_t coeff) const {
  return basis_element(shape_.index(j), prime().reduce(coeff));
}

Distribution DistLevel::generator(std::size_t coord, unsigned power) const {
  if (coord >= shape_.coordinates() || power > level()) throw DomainError("generator outside the level");
  return basis_element(shape_.generator_code(shape_.generator(coord, power)));
}

FieldElement DistLevel::pair(const MultiIndex& j, const MultiIndex& k) const {
  shape_.index(j);
  shape_.index(k);
  return FieldElement(j == k ? 1 : 0, prime());
}

Distribution DistLevel::add(const Distribution& a, const Distribution& b) const {
  check_level(a);
  check_level(b);
  return {id_, a.terms.plus(b.terms, prime())};
}

Distribution DistLevel::sub(const Distribution& a, const Distribution& b) const {
  check_level(a);
  check_level(b);
  return {id_, a.terms.minus(b.terms, prime())};
}

Distribution DistLevel::scale(const Distribution& a, std::int64_t c) const {
  check_level(a);
  return {id_, a.terms.scaled(prime().reduce(c), prime())};
}

const TensorCombination& DistLevel::expansion(std::uint32_t k) const {
  {
    std::shared_lock lock(expansion_mutex_);
    if (expansions_[k]) return *expansions_[k];
  }
  const Prime p = prime();
  const std::uint64_t dim = dimension();
  const unsigned cap = law_.cap();
  std::shared_ptr<const TensorCombination> built;
  if (k == 0) {
    built = std::make_shared<TensorCombination>(TensorCombination::single(0, 1));
  } else {
    auto e = shape_.exponents(k);
    std::size_t j = 0;
    while (e[j] == 0) ++j;
    e[j] = static_cast<MultiIndex::value_type>(e[j] - 1);
    const auto& prev = expansion(shape_.index(e));
    SparseBuilder<std::uint64_t> acc(p);
    for (const auto& [key, c] : prev.terms()) {
      const auto left = static_cast<std::uint32_t>(key / dim);
      const auto right = static_cast<std::uint32_t>(key % dim);
      const unsigned d = degree_[left] + degree_[right];
      for (const auto& t : comul_terms_[j]) {
        std::uint32_t l2, r2;
        if (d + degree_[t.left] + degree_[t.right] > cap) continue;
        if (!shape_.add_indices(left, t.left, l2) || !shape_.add_indices(right, t.right, r2)) continue;
        acc.add(l2 * dim + r2, p.mul(c, t.coeff));
      }
    }
    built = std::make_shared<TensorCombination>(acc.finish());
  }
  std::unique_lock lock(expansion_mutex_);
  if (!expansions_[k]) expansions_[k] = std::move(built);
  return *expansions_[k];
}

const Combination& DistLevel::basis_product(std::uint32_t i, std::uint32_t j) const {
  const std::uint64_t dim = dimension();
  if (i >= dim || j >= dim) throw DomainError("basis index outside the level");
  const std::uint64_t key = i * dim + j;
  {
    std::shared_lock lock(product_mutex_);
    auto it = products_.find(key);
    if (it != products_.end()) return *it->second;
  }
  const unsigned d = degree_[i] + degree_[j];
  if (d > law_.cap())
    throw TruncationError("product " + basis_text(i) + " * " + basis_text(j) + " needs cap " +
                          std::to_string(d) + ", law is truncated at " + std::to_string(law_.cap()));
  std::vector<Combination::Term> terms;
  for (std::uint32_t k : by_degree_) {
    if (degree_[k] > d) break;
    if (auto c = expansion(k).coeff(key)) terms.emplace_back(k, c);
  }
  std::sort(terms.begin(), terms.end());
  auto built = std::make_shared<const Combination>(Combination::from_sorted(std::move(terms)));
  std::unique_lock lock(product_mutex_);
  auto [it, inserted] = products_.emplace(key, std::move(built));
  return *it->second;
}

Distribution DistLevel::mul(const Distribution& a, const Distribution& b) const {
  check_level(a);
  check_level(b);
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [i, ci] : a.terms.terms())
    for (const auto& [j, cj] : b.terms.terms()) acc.add(basis_product(i, j), prime().mul(ci, cj));
  return {id_, acc.finish()};
}

Distribution DistLevel::commutator(const Distribution& a, const Distribution& b) const {
  return sub(mul(a, b), mul(b, a));
}

DistTensor DistLevel::comul(const Distribution& a) const {
  check_level(a);
  const std::uint64_t dim = dimension();
  const std::size_t n = shape_.coordinates();
  SparseBuilder<std::uint64_t> acc(prime());
  for (const auto& [j, c] : a.terms.terms()) {
    const auto e = shape_.exponents(j);
    // walk every A <= J componentwise
    MultiIndex part(n);
    while (true) {
      const std::uint32_t ai = shape_.index(part);
      acc.add(ai * dim + (j - ai), c);
      std::size_t k = 0;
      while (k < n && part[k] == e[k]) part[k++] = 0;
      if (k == n) break;
      ++part[k];
    }
  }
  return {id_, acc.finish()};
}

DistTensor DistLevel::tensor_mul(const DistTensor& a, const DistTensor& b) const {
  if (a.level_id != id_ || b.level_id != id_) throw DomainError("tensor from a different level");
  const std::uint64_t dim = dimension();
  const Prime p = prime();
  SparseBuilder<std::uint64_t> acc(p);
  for (const auto& [ka, ca] : a.terms.terms()) {
    for (const auto& [kb, cb] : b.terms.terms()) {
      const auto& left = basis_product(static_cast<std::uint32_t>(ka / dim), static_cast<std::uint32_t>(kb / dim));
      const auto& right = basis_product(static_cast<std::uint32_t>(ka % dim), static_cast<std::uint32_t>(kb % dim));
      const auto c = p.mul(ca, cb);
      for (const auto& [l, cl] : left.terms())
        for (const auto& [r, cr] : right.terms()) acc.add(l * dim + r, p.mul(c, p.mul(cl, cr)));
    }
  }
  return {id_, acc.finish()};
}

std::uint32_t DistLevel::counit(const Distribution& a) const {
  check_level(a);
  return a.terms.coeff(0);
}

unsigned DistLevel::filtration_degree(const Distribution& a) const {
  check_level(a);
  unsigned d = 0;
  for (const auto& [j, c] : a.terms.terms()) d = std::max<unsigned>(d, degree_[j]);
  return d;
}

const Distribution& DistLevel::mult_to_additive(std::uint32_t monomial) const {
  if (monomial >= dimension()) throw DomainError("monomial outside the level");
  {
    std::shared_lock lock(monomial_mutex_);
    if (monomials_[monomial]) return *monomials_[monomial];
  }
  std::shared_ptr<const Distribution> built;
  if (monomial == 0) {
    built = std::make_shared<const Distribution>(unit());
  } else {
    // peel off the last (largest) generator: u = u' g
    const auto w = shape_.word(monomial);
    const std::uint32_t g = shape_.generator_code(w.back());
    const auto& prefix = mult_to_additive(monomial - g);
    SparseBuilder<std::uint32_t> acc(prime());
    for (const auto& [i, c] : prefix.terms.terms()) acc.add(basis_product(i, g), c);
    built = std::make_shared<const Distribution>(Distribution{id_, acc.finish()});
  }
  std::unique_lock lock(monomial_mutex_);
  if (!monomials_[monomial]) monomials_[monomial] = std::move(built);
  return *monomials_[monomial];
}

Distribution DistLevel::mult_to_additive(const Combination& monomials) const {
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [u, c] : monomials.terms()) acc.add(mult_to_additive(u).terms, c);
  return {id_, acc.finish()};
}

Combination DistLevel::additive_to_mult(const Distribution& a) const {
  check_level(a);
  const Prime p = prime();
  Combination rest = a.terms;
  std::vector<Combination::Term> out;
  while (!rest.empty()) {
    std::uint32_t lead = rest.terms().front().first;
    for (const auto& [k, c] : rest.terms())
      if (shape_.compare_additive(k, lead) > 0) lead = k;
    const std::uint32_t fact = shape_.padic_factorial_of(lead);
    const auto& expanded = mult_to_additive(lead).terms;
    if (expanded.coeff(lead) != fact)
      throw Error("internal: leading coefficient of monomial " + basis_text(lead) + " is not J!_p");
    const std::uint32_t q = p.mul(rest.coeff(lead), p.inv(fact));
    out.emplace_back(lead, q);
    rest = rest.axpy(expanded, p.neg(q), p);
    if (rest.coeff(lead) != 0) throw Error("internal: back-substitution did not cancel the leading term");
  }
  std::sort(out.begin(), out.end());
  return Combination::from_sorted(std::move(out));
}

Distribution DistLevel::frobenius_power(Generator g) const {
  if (g >= shape_.generator_count()) throw DomainError("generator outside the level");
  const auto eta = basis_element(shape_.generator_code(g));
  auto r = eta;
  for (std::uint32_t k = 1; k < prime().value(); ++k) r = mul(r, eta);
  return r;
}

Distribution DistLevel::canonical_commutator(Generator eta, Generator zeta) const {
  if (eta >= shape_.generator_count() || zeta >= shape_.generator_count())
    throw DomainError("generator outside the level");
  return commutator(basis_element(shape_.generator_code(eta)), basis_element(shape_.generator_code(zeta)));
}

void DistLevel::ensure_inverse() const {
  std::call_once(inverse_once_, [this] {
    const unsigned need = static_cast<unsigned>(shape_.coordinates() * shape_.bound());
    inverse_cap_ = std::min(law_.cap(), need);
    const auto inv = inverse_series(law_, inverse_cap_);
    const std::size_t n = shape_.coordinates();
    inverse_terms_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [m, c] : inv[j].terms()) {
        bool inside = true;
        for (std::size_t k = 0; k < n; ++k) inside = inside && m[k] <= shape_.bound();
        if (inside) inverse_terms_[j].emplace_back(shape_.index(m), c);
      }
    }
    inverse_powers_.resize(dimension());
  });
}

const Combination& DistLevel::inverse_power(std::uint32_t k) const {
  {
    std::shared_lock lock(inverse_mutex_);
    if (inverse_powers_[k]) return *inverse_powers_[k];
  }
  std::shared_ptr<const Combination> built;
  if (k == 0) {
    built = std::make_shared<const Combination>(Combination::single(0, 1));
  } else {
    auto e = shape_.exponents(k);
    std::size_t j = 0;
    while (e[j] == 0) ++j;
    e[j] = static_cast<MultiIndex::value_type>(e[j] - 1);
    const auto& prev = inverse_power(shape_.index(e));
    SparseBuilder<std::uint32_t> acc(prime());
    for (const auto& [a, ca] : prev.terms()) {
      for (const auto& [b, cb] : inverse_terms_[j]) {
        std::uint32_t s;
        if (degree_[a] + degree_[b] > inverse_cap_ || !shape_.add_indices(a, b, s)) continue;
        acc.add(s, prime().mul(ca, cb));
      }
    }
    built = std::make_shared<const Combination>(acc.finish());
  }
  std::unique_lock lock(inverse_mutex_);
  if (!inverse_powers_[k]) inverse_powers_[k] = std::move(built);
  return *inverse_powers_[k];
}

Distribution DistLevel::antipode(const Distribution& a) const {
  check_level(a);
  ensure_inverse();
  SparseBuilder<std::uint32_t> acc(prime());
  for (const auto& [j, c] : a.terms.terms()) {
    if (degree_[j] > inverse_cap_)
      throw TruncationError("antipode of " + basis_text(j) + " needs the inverse series beyond degree " +
                            std::to_string(inverse_cap_));
    // S(delta_J) = sum_K [x^J] i(x)^K delta_K, and i(x)^K has order |K|
    for (std::uint32_t k : by_degree_) {
      if (degree_[k] > degree_[j]) break;
      acc.add(k, prime().mul(c, inverse_power(k).coeff(j)));
    }
  }
  return {id_, acc.finish()};
}

std::string DistLevel::basis_text(std::uint32_t idx) const {
  if (idx == 0) return "1";
  std::string s = "d[";
  bool first = true;
  for (std::size_t j = 0; j < shape_.coordinates(); ++j) {
    auto e = shape_.exponent(idx, j);
    if (!e) continue;
    if (!first) s += " ";
    first = false;
    s += shape_.names()[j];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s + "]";
}

namespace {
std::string with_coeff(std::uint32_t c, const std::string& body) {
  if (body == "1") return std::to_string(c);
  return c == 1 ? body : std::to_string(c) + "*" + body;
}
}  // namespace

std::string DistLevel::to_text(const Distribution& a) const {
  check_level(a);
  auto terms = a.terms.terms();
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(),
            [this](const auto& x, const auto& y) { return shape_.compare_additive(x.first, y.first) > 0; });
  std::string s;
  for (const auto& [j, c] : terms) {
    if (!s.empty()) s += " + ";
    s += with_coeff(c, basis_text(j));
  }
  return s;
}

std::string DistLevel::to_text(const DistTensor& a) const {
  if (a.level_id != id_) throw DomainError("tensor from a different level");
  auto terms = a.terms.terms();
  if (terms.empty()) return "0";
  const std::uint64_t dim = dimension();
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
    auto left = [&](const auto& t) { return static_cast<std::uint32_t>(t.first / dim); };
    auto right = [&](const auto& t) { return static_cast<std::uint32_t>(t.first % dim); };
    if (int c = shape_.compare_additive(left(x), left(y))) return c > 0;
    return shape_.compare_additive(right(x), right(y)) > 0;
  });
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    std::string body = basis_text(static_cast<std::uint32_t>(k / dim)) + "⊗" +
                       basis_text(static_cast<std::uint32_t>(k % dim));
    s += c == 1 ? body : std::to_string(c) + "*" + body;
  }
  return s;
}

}  // namespace fgdist
