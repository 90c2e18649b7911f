#include "fgdist/report.hpp"

namespace fgdist {

std::string CheckReport::to_text() const {
  std::string s;
  for (const auto& e : entries) {
    s += e.passed ? "[PASS] " : "[FAIL] ";
    s += e.name;
    if (!e.witness.empty()) s += " -- witness: " + e.witness;
    if (!e.detail.empty()) s += " (" + e.detail + ")";
    s += "\n";
  }
  return s;
}

}  // namespace fgdist
