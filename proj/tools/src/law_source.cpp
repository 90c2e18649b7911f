#include "law_source.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <fgdist/error.hpp>
#include <fgdist/io.hpp>

namespace fgdist::cli {

namespace {

std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, '*')) parts.push_back(part);
  return parts;
}

std::size_t builtin_coordinates(const std::string& name) {
  if (name == "ga" || name == "gm") return 1;
  if (name == "t2") return 2;
  throw ParseError("unknown builtin law '" + name + "' (expected ga, gm, t2 or a product like ga*gm)");
}

Prime checked_prime(unsigned p) {
  if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime");
  return Prime(p);
}

unsigned checked_cap(const LawOptions& o, Prime p, std::size_t n, std::optional<unsigned> file_cap) {
  const unsigned floor = default_cap(p, o.level, n);
  const auto requested = o.cap ? o.cap : file_cap;
  if (!requested) return floor;
  if (*requested < floor && !o.unsafe_cap)
    throw ParseError("cap " + std::to_string(*requested) + " is below " + std::to_string(floor) +
                     " for this level; pass --unsafe-cap to allow it");
  return *requested;
}

}  // namespace

FormalGroupLaw load_law(const LawOptions& o) {
  if (!o.builtin.empty() && !o.law_file.empty()) throw ParseError("give either --builtin or --law, not both");
  if (!o.given()) throw ParseError("no law given (use --builtin or --law)");

  if (!o.builtin.empty()) {
    const Prime p = checked_prime(o.p.value_or(2));
    const auto parts = split_product(o.builtin);
    std::size_t n = 0;
    for (const auto& part : parts) n += builtin_coordinates(part);
    const unsigned cap = checked_cap(o, p, n, std::nullopt);
    std::vector<FormalGroupLaw> laws;
    for (const auto& part : parts) {
      if (part == "ga") laws.push_back(builtin_additive(p, cap));
      else if (part == "gm") laws.push_back(builtin_multiplicative(p, cap));
      else laws.push_back(builtin_t2(p, cap));
    }
    return laws.size() == 1 ? laws.front() : product_law(laws);
  }

  const json j = parse_json(read_text(o.law_file));
  if (!j.is_object() || !j.contains("p") || !j.contains("coords"))
    throw ParseError("law file needs \"p\" and \"coords\"");
  const Prime p = checked_prime(j.at("p").get<unsigned>());
  if (o.p && *o.p != p.value()) throw ParseError("-p disagrees with the law file");
  std::optional<unsigned> file_cap;
  if (j.contains("cap")) file_cap = j.at("cap").get<unsigned>();
  json with_cap = j;
  with_cap["cap"] = checked_cap(o, p, j.at("coords").size(), file_cap);
  return load_custom(with_cap);
}

std::string read_text(const std::string& path) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace fgdist::cli
