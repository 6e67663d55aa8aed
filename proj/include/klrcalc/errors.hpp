#pragma once

#include <stdexcept>
#include <string>

namespace klrcalc {

// Base for all domain errors raised by the library. The CLI maps these to
// exit code 1; malformed command lines exit 2 instead.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact Laurent division failed (nonzero remainder or non-integral quotient).
struct NonDivisibleError : Error {
  explicit NonDivisibleError(const std::string& msg) : Error(msg) {}
};

// A class that must be effective (a genuine direct-sum decomposition)
// came out with a negative coefficient.
struct NegativeMultiplicityError : Error {
  explicit NegativeMultiplicityError(const std::string& msg) : Error(msg) {}
};

// A graded dimension count went negative; the input support violates the
// axioms the engine relies on.
struct NegativeDimensionError : Error {
  explicit NegativeDimensionError(const std::string& msg) : Error(msg) {}
};

// Divided-power deconvolution could not anchor inside the requested window.
struct WindowTooNarrowError : Error {
  explicit WindowTooNarrowError(const std::string& msg) : Error(msg) {}
};

// A rewrite touched vertices that are not adjacent in the graph.
struct NotAdjacentError : Error {
  explicit NotAdjacentError(const std::string& msg) : Error(msg) {}
};

// Rewriting failed to terminate within its step budget.
struct NonTerminationError : Error {
  explicit NonTerminationError(const std::string& msg) : Error(msg) {}
};

// The polynomial model failed its self-check, so it must not be used.
struct OracleUnverifiedError : Error {
  explicit OracleUnverifiedError(const std::string& msg) : Error(msg) {}
};

// A switch/drop move was applied where its side condition fails.
struct InvalidMoveError : Error {
  explicit InvalidMoveError(const std::string& msg) : Error(msg) {}
};

// The backward path construction could not pick a next slide.
struct ClaimFailureError : Error {
  explicit ClaimFailureError(const std::string& msg) : Error(msg) {}
};

// No lattice point satisfies the requested support constraints.
struct EmptySupportError : Error {
  explicit EmptySupportError(const std::string& msg) : Error(msg) {}
};

}  // namespace klrcalc
