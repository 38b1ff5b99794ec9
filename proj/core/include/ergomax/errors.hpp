#pragma once

#include <stdexcept>
#include <string>

namespace ergomax {

// Error taxonomy; the CLI maps these onto exit codes
// (parse -> 2, degenerate input -> 3, domain violation -> 4, internal -> 5).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input documents (JSON schema, point syntax, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally degenerate inputs, e.g. a subshift that trims to nothing.
class EmptySubshiftError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (parameter outside its admissible range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation failed to certify its own result (non-convergence,
// violated identity). Never swallowed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergomax
