#include "fgdist/text.hpp"

#include <cctype>
#include <optional>

#include "fgdist/error.hpp"

namespace fgdist {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_space();
    return i_ >= s_.size();
  }
  char peek() {
    skip_space();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_ident() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::uint64_t number() {
    if (!at_digit()) fail("expected a number");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<unsigned>(s_[i_++] - '0');
      if (v > (1ull << 40)) fail("number too large");
    }
    return v;
  }
  std::string ident() {
    if (!at_ident()) fail("expected a name");
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return s_.substr(start, i_ - start);
  }
  // primes glued to the preceding name
  unsigned primes() {
    unsigned n = 0;
    while (i_ < s_.size() && s_[i_] == '\'') {
      ++i_;
      ++n;
    }
    return n;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

std::size_t coordinate_named(const std::vector<std::string>& names, const std::string& n, Cursor& cur) {
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == n) return j;
  cur.fail("unknown coordinate '" + n + "'");
}

// optional leading sign and "c*"; returns the coefficient as a residue
std::uint32_t coefficient(Cursor& cur, Prime p, bool negative, bool& bare_number) {
  bare_number = false;
  std::uint64_t c = 1;
  if (cur.at_digit()) {
    c = cur.number();
    if (!cur.accept('*')) bare_number = true;
  }
  const std::uint32_t r = static_cast<std::uint32_t>(c % p.value());
  return negative ? p.neg(r) : r;
}

Distribution parse_atom(const DistLevel& dist, Cursor& cur) {
  const auto& sh = dist.shape();
  const std::string head = cur.ident();
  if (head == "d") {
    cur.expect('[');
    MultiIndex j(sh.coordinates());
    while (!cur.accept(']')) {
      const std::size_t c = coordinate_named(sh.names(), cur.ident(), cur);
      std::uint64_t e = 1;
      if (cur.accept('^')) e = cur.number();
      if (j[c] + e > sh.bound()) throw DomainError("exponent of " + sh.names()[c] + " exceeds the level bound");
      j[c] = static_cast<MultiIndex::value_type>(j[c] + e);
    }
    return dist.basis(j);
  }
  if (head == "m") {
    cur.expect('[');
    std::uint32_t code = 0;
    bool first = true;
    while (!cur.accept(']')) {
      if (!first) cur.expect(';');
      first = false;
      const std::size_t c = coordinate_named(sh.names(), cur.ident(), cur);
      cur.expect(':');
      for (unsigned t = 0;; ++t) {
        const auto d = cur.number();
        if (t > sh.level()) throw DomainError("more digits than the level allows for " + sh.names()[c]);
        if (d >= sh.prime().value()) throw DomainError("digit " + std::to_string(d) + " is not below p");
        code += static_cast<std::uint32_t>(d) * sh.generator_code(sh.generator(c, t));
        if (!cur.accept(',')) break;
      }
    }
    return dist.mult_to_additive(code);
  }
  cur.fail("expected d[...] or m[...]");
}

}  // namespace

Distribution parse_distribution(const DistLevel& dist, const std::string& text) {
  Cursor cur(text);
  const Prime p = dist.prime();
  if (cur.done()) cur.fail("empty operand");
  Distribution acc = dist.zero();
  bool first = true;
  while (!cur.done()) {
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else if (!first) cur.expect('+');
    if (!first && cur.accept('-')) negative = !negative;
    first = false;
    bool bare = false;
    const std::uint32_t c = coefficient(cur, p, negative, bare);
    Distribution term = bare ? dist.unit() : parse_atom(dist, cur);
    acc = dist.add(acc, dist.scale(term, c));
  }
  return acc;
}

Word parse_word(const LevelShape& shape, const std::string& text) {
  Cursor cur(text);
  Word w;
  while (!cur.done()) {
    if (cur.at_digit()) {
      if (cur.number() != 1 || !cur.done() || !w.empty()) cur.fail("only the empty word may be written 1");
      break;
    }
    const std::size_t c = coordinate_named(shape.names(), cur.ident(), cur);
    std::uint64_t e = 1;
    if (cur.accept('^')) e = cur.number();
    std::optional<unsigned> power;
    std::uint64_t q = 1;
    for (unsigned t = 0; t <= shape.level(); ++t, q *= shape.prime().value())
      if (q == e) power = t;
    if (!power) throw DomainError("generator " + shape.names()[c] + "^" + std::to_string(e) + " is not in the level");
    w.push_back(shape.generator(c, *power));
  }
  return w;
}

TruncatedSeries parse_series(const VariableSet& vars, unsigned cap, Prime p, const std::string& text) {
  Cursor cur(text);
  if (cur.done()) cur.fail("empty series");
  std::vector<TruncatedSeries::Term> terms;
  bool first = true;
  while (!cur.done()) {
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else if (!first) cur.expect('+');
    if (!first && cur.accept('-')) negative = !negative;
    first = false;
    bool bare = false;
    const std::uint32_t c = coefficient(cur, p, negative, bare);
    MultiIndex m(vars.size());
    if (!bare) {
      do {
        const std::string name = cur.ident();
        const unsigned primes = cur.primes();
        const std::size_t coord = coordinate_named(vars.names(), name, cur);
        const unsigned copy = vars.rank() == 1 ? primes : primes - 1;
        if ((vars.rank() == 1 && primes != 0) || (vars.rank() > 1 && (primes == 0 || primes > vars.rank())))
          cur.fail("variable " + name + " needs between 1 and " + std::to_string(vars.rank()) + " primes");
        std::uint64_t e = 1;
        if (cur.accept('^')) e = cur.number();
        const std::size_t at = vars.index(copy, coord);
        if (m[at] + e > 0xffff) cur.fail("exponent too large");
        m[at] = static_cast<MultiIndex::value_type>(m[at] + e);
      } while (cur.accept('*'));
    }
    terms.emplace_back(m, c);
  }
  return TruncatedSeries::from_terms(vars, cap, p, terms);
}

}  // namespace fgdist
