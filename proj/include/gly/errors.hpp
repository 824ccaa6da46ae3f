#pragma once

#include <stdexcept>
#include <string>

namespace gly {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point lies outside the domain of a map or outside the phase space.
struct DomainError : Error {
  using Error::Error;
};

/// The inner map's range escapes the outer map's domain.
struct CompositionError : Error {
  using Error::Error;
};

/// Inversion requested for a map that is not a homeomorphism onto its codomain.
struct NotInvertibleError : Error {
  using Error::Error;
};

/// A configured cap (breakpoint count, ball size) was exceeded.
struct ResourceLimitError : Error {
  using Error::Error;
};

/// Malformed input text: rationals, words, system files, certificates.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid input that violates a precondition or an action axiom.
struct ValidationError : Error {
  using Error::Error;
};

/// A guaranteed-by-construction step failed; indicates a bug or mutated input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace gly
