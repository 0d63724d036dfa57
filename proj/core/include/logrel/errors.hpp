#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logrel {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical / syntactic failure while reading a formula or sequent.
// `offset` is the zero-based character position in the input text.
struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : Error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

// Failure while reading a logic definition file; `line` is one-based.
struct DefinitionError : Error {
  int line;
  DefinitionError(const std::string& msg, int ln)
      : Error(msg + " (line " + std::to_string(ln) + ")"), line(ln) {}
};

// A formula mentions an atom or connective the evaluator has no entry for.
struct CoverageError : Error {
  using Error::Error;
};

// Proof search ran out of its step allowance. Distinct from "invalid":
// callers must not conflate the two.
struct BudgetExhaustedError : Error {
  using Error::Error;
};

// A recapture constraint was applied to a system of the wrong kind.
struct ConstraintError : Error {
  using Error::Error;
};
}  // namespace logrel
