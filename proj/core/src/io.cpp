#include "fgdist/io.hpp"

#include <algorithm>

#include "fgdist/error.hpp"
#include "fgdist/text.hpp"

namespace fgdist {

namespace {

// nlohmann type errors become ParseError so callers see one input failure type.
template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::uint32_t monomial_from_text(const LevelShape& shape, const std::string& s) {
  if (s == "1") return 0;
  return shape.from_word(parse_word(shape, s));
}

Generator generator_from_text(const LevelShape& shape, const std::string& s) {
  const auto w = parse_word(shape, s);
  if (w.size() != 1) throw ParseError("expected a single generator, got \"" + s + "\"");
  return w.front();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json law_to_json(const FormalGroupLaw& law) {
  json j;
  j["p"] = law.prime().value();
  j["cap"] = law.cap();
  j["coords"] = law.coords();
  json comul = json::object();
  for (std::size_t i = 0; i < law.dimension(); ++i) comul[law.coords()[i]] = law.comul(i).to_string();
  j["comul"] = comul;
  json blocks = json::array();
  for (const auto& b : law.blocks()) {
    json names = json::array();
    for (auto c : b.coordinate_indices) names.push_back(law.coords()[c]);
    blocks.push_back({{"kind", to_string(b.kind)}, {"coords", names}});
  }
  j["blocks"] = blocks;
  return j;
}

FormalGroupLaw law_from_json(const json& j, std::optional<unsigned> default_cap) {
  return guarded("law", [&] {
    const Prime p(j.at("p").get<std::uint32_t>());
    const auto coords = j.at("coords").get<std::vector<std::string>>();
    if (coords.empty()) throw ParseError("law: no coordinates");
    unsigned cap = 0;
    if (j.contains("cap")) cap = j.at("cap").get<unsigned>();
    else if (default_cap) cap = *default_cap;
    else throw ParseError("law: missing \"cap\"");
    const VariableSet tensor(coords, 2);
    std::vector<TruncatedSeries> comul;
    for (const auto& c : coords) {
      if (!j.at("comul").contains(c)) throw ParseError("law: no comultiplication for " + c);
      comul.push_back(parse_series(tensor, cap, p, j.at("comul").at(c).get<std::string>()));
    }
    std::vector<BlockDescriptor> blocks;
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) {
        BlockDescriptor d;
        d.id = blocks.size();
        d.kind = block_kind_from_string(b.value("kind", std::string("custom")));
        for (const auto& name : b.at("coords").get<std::vector<std::string>>()) {
          auto it = std::find(coords.begin(), coords.end(), name);
          if (it == coords.end()) throw ParseError("law: block names unknown coordinate " + name);
          d.coordinate_indices.push_back(static_cast<std::size_t>(it - coords.begin()));
        }
        blocks.push_back(std::move(d));
      }
    } else {
      BlockDescriptor d;
      for (std::size_t i = 0; i < coords.size(); ++i) d.coordinate_indices.push_back(i);
      blocks.push_back(std::move(d));
    }
    return FormalGroupLaw(p, cap, coords, std::move(comul), std::move(blocks));
  });
}

FormalGroupLaw load_custom(const json& j, std::optional<unsigned> default_cap) {
  auto law = law_from_json(j, default_cap);
  const auto report = validate(law);
  if (const auto* f = report.first_failure()) throw AxiomError(f->name, f->witness);
  return law;
}

json splay_to_json(const SplayDescription& splay) {
  json blocks = json::array();
  for (std::size_t b = 0; b < splay.block_count(); ++b) blocks.push_back(law_to_json(splay.block_law(b)));
  return {{"p", splay.prime().value()}, {"level", splay.level()}, {"blocks", blocks}};
}

std::shared_ptr<const SplayDescription> splay_from_json(const json& j) {
  return guarded("splay", [&] {
    std::vector<FormalGroupLaw> laws;
    for (const auto& b : j.at("blocks")) laws.push_back(load_custom(b));
    auto splay = std::make_shared<const SplayDescription>(std::move(laws), j.at("level").get<unsigned>());
    if (splay->prime().value() != j.at("p").get<std::uint32_t>()) throw ParseError("splay: prime mismatch");
    return splay;
  });
}

json combination_to_json(const LevelShape& shape, const Combination& c) {
  json out = json::array();
  for (const auto& [u, v] : c.terms()) out.push_back({monomial_text(shape, u), v});
  return out;
}

Combination combination_from_json(const LevelShape& shape, const json& j) {
  return guarded("combination", [&] {
    std::vector<Combination::Term> terms;
    for (const auto& t : j) {
      const auto c = t.at(1).get<std::int64_t>();
      const auto r = static_cast<std::uint32_t>(((c % shape.prime().value()) + shape.prime().value()) %
                                                shape.prime().value());
      terms.emplace_back(monomial_from_text(shape, t.at(0).get<std::string>()), r);
    }
    return Combination::from_unsorted(std::move(terms), shape.prime());
  });
}

json table_to_json(const PoissonTable& table) {
  const auto& sh = table.splay().shape();
  json entries = json::array();
  for (const auto& [key, value] : table.entries())
    entries.push_back({{"eta", sh.generator_name(key.first)},
                       {"zeta", sh.generator_name(key.second)},
                       {"value", combination_to_json(sh, value)}});
  return {{"splay", splay_to_json(table.splay())}, {"entries", entries}};
}

PoissonTable table_from_json(const json& j) {
  return table_from_json(j, guarded("table", [&] { return splay_from_json(j.at("splay")); }));
}

PoissonTable table_from_json(const json& j, std::shared_ptr<const SplayDescription> splay) {
  return guarded("table", [&] {
    PoissonTable table(splay);
    const auto& sh = splay->shape();
    for (const auto& e : j.at("entries"))
      table.set(generator_from_text(sh, e.at("eta").get<std::string>()),
                generator_from_text(sh, e.at("zeta").get<std::string>()),
                combination_from_json(sh, e.at("value")));
    return table;
  });
}

json algebra_to_json(const ReconstructedAlgebra& algebra) {
  const auto& sh = algebra.shape();
  const std::uint64_t dim = algebra.dimension();
  json basis = json::array();
  for (auto u : algebra.basis()) basis.push_back(monomial_text(sh, u));
  json products = json::array();
  for (auto u : algebra.basis())
    for (auto v : algebra.basis())
      products.push_back({{"u", monomial_text(sh, u)},
                          {"v", monomial_text(sh, v)},
                          {"value", combination_to_json(sh, algebra.product(u, v))}});
  json comul = json::array();
  for (auto u : algebra.basis()) {
    json terms = json::array();
    for (const auto& [k, c] : algebra.comul(u).terms())
      terms.push_back({monomial_text(sh, static_cast<std::uint32_t>(k / dim)),
                       monomial_text(sh, static_cast<std::uint32_t>(k % dim)), c});
    comul.push_back({{"u", monomial_text(sh, u)}, {"value", terms}});
  }
  return {{"table", table_to_json(algebra.table())}, {"basis", basis}, {"products", products}, {"comul", comul}};
}

ReconstructedAlgebra algebra_from_json(const json& j) {
  return guarded("algebra", [&] {
    auto table = table_from_json(j.at("table"));
    auto splay = table.splay_ptr();
    const auto& sh = splay->shape();
    const std::uint64_t dim = sh.dimension();
    std::vector<std::uint32_t> basis;
    for (const auto& w : j.at("basis")) basis.push_back(monomial_from_text(sh, w.get<std::string>()));
    std::vector<Combination> structure(dim * dim);
    std::vector<bool> seen(dim * dim, false);
    for (const auto& e : j.at("products")) {
      const auto u = monomial_from_text(sh, e.at("u").get<std::string>());
      const auto v = monomial_from_text(sh, e.at("v").get<std::string>());
      structure[u * dim + v] = combination_from_json(sh, e.at("value"));
      seen[u * dim + v] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ParseError("algebra: structure constants are incomplete");
    std::vector<TensorCombination> comul(dim);
    for (const auto& e : j.at("comul")) {
      const auto u = monomial_from_text(sh, e.at("u").get<std::string>());
      std::vector<TensorCombination::Term> terms;
      for (const auto& t : e.at("value"))
        terms.emplace_back(monomial_from_text(sh, t.at(0).get<std::string>()) * dim +
                               monomial_from_text(sh, t.at(1).get<std::string>()),
                           t.at(2).get<std::uint32_t>());
      comul[u] = TensorCombination::from_unsorted(std::move(terms), sh.prime());
    }
    return ReconstructedAlgebra(splay, std::move(table), std::move(basis), std::move(structure), std::move(comul));
  });
}

json report_to_json(const CheckReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json o = {{"name", e.name}, {"passed", e.passed}};
    if (!e.witness.empty()) o["witness"] = e.witness;
    if (!e.detail.empty()) o["detail"] = e.detail;
    entries.push_back(o);
  }
  return {{"passed", report.passed()}, {"entries", entries}};
}

}  // namespace fgdist
