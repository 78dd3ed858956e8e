#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace herglotz {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- expression parsing / evaluation ---------------------------------------

// Parse diagnostics carry a 0-based character offset into the source text.
struct ParseDiagnostic : Error {
  ParseDiagnostic(const std::string& msg, std::size_t pos)
      : Error(msg + " (at column " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct SyntaxError : ParseDiagnostic {
  using ParseDiagnostic::ParseDiagnostic;
};

struct OrderExceeded : ParseDiagnostic {
  using ParseDiagnostic::ParseDiagnostic;
};

struct IndexExceeded : ParseDiagnostic {
  using ParseDiagnostic::ParseDiagnostic;
};

struct UnknownIdentifier : ParseDiagnostic {
  using ParseDiagnostic::ParseDiagnostic;
};

// Evaluation hit a point outside a function's domain (log of a non-positive
// value, sqrt of a negative, division by zero, ...). Signals an invalid
// trajectory point, not a bug.
struct DomainError : Error {
  using Error::Error;
};

// --- problem definition ------------------------------------------------------

struct InvalidInterval : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct VariableOutOfBounds : Error {
  using Error::Error;
};

// --- numerics ---------------------------------------------------------------

struct NonFiniteState : Error {
  NonFiniteState(const std::string& msg, std::size_t node)
      : Error(msg + " (first bad node " + std::to_string(node) + ")"), node(node) {}
  std::size_t node;
};

struct GridTooCoarse : Error {
  using Error::Error;
};

struct SingularControl : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

// --- verification -----------------------------------------------------------

struct IdentityViolation : Error {
  using Error::Error;
};

// --- file I/O ---------------------------------------------------------------

struct FileFormatError : Error {
  using Error::Error;
};

struct ColumnMismatch : Error {
  using Error::Error;
};

struct MissingSection : Error {
  using Error::Error;
};

}  // namespace herglotz
