#pragma once

#include <optional>
#include <string>

#include <fgdist/formal_group.hpp>

namespace fgdist::cli {

// Exit codes shared by every command.
enum Exit : int { ok = 0, refused = 2, bad_input = 3 };

struct LawOptions {
  std::string builtin;
  std::string law_file;
  std::optional<unsigned> p;
  unsigned level = 0;
  std::optional<unsigned> cap;
  bool unsafe_cap = false;

  bool given() const { return !builtin.empty() || !law_file.empty(); }
};

// ga, gm, t2 and '*'-products of them ("ga*gm"), or a JSON law file that must
// validate. Caps below default_cap need unsafe_cap. Throws ParseError for
// input problems.
FormalGroupLaw load_law(const LawOptions& o);

std::string read_text(const std::string& path);  // "-" reads stdin
void write_text(const std::string& path, const std::string& text);  // "" or "-" writes stdout

int demo_t2(unsigned p, unsigned level, bool json);

}  // namespace fgdist::cli
