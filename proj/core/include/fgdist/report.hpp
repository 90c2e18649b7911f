#pragma once

#include <string>
#include <vector>

namespace fgdist {

struct CheckEntry {
  std::string name;     // axiom or check name
  bool passed = true;
  std::string witness;  // first failing monomial, pair or triple
  std::string detail;   // free-form note (slack, counts)
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  void pass(std::string name, std::string detail = {}) {
    entries.push_back({std::move(name), true, {}, std::move(detail)});
  }
  void fail(std::string name, std::string witness, std::string detail = {}) {
    entries.push_back({std::move(name), false, std::move(witness), std::move(detail)});
  }
  void append(const CheckReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }

  bool passed() const {
    for (const auto& e : entries)
      if (!e.passed) return false;
    return true;
  }
  const CheckEntry* first_failure() const {
    for (const auto& e : entries)
      if (!e.passed) return &e;
    return nullptr;
  }
  std::string to_text() const;
};

}  // namespace fgdist
