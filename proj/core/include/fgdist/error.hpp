#pragma once

#include <stdexcept>
#include <string>

namespace fgdist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mixed characteristics, bad lengths, indices outside a level.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation needed coefficients above the truncation cap.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON, operand syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A law, table or algebra failed a named axiom.
class AxiomError : public Error {
 public:
  AxiomError(std::string axiom, std::string witness)
      : Error(axiom + ": " + witness), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

  const std::string& axiom() const noexcept { return axiom_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  std::string witness_;
};

}  // namespace fgdist
