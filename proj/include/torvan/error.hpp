#ifndef TORVAN_ERROR_HPP
#define TORVAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace torvan {

// Base for all engine errors. Anything escaping to the CLI that is not a
// ValidationError is treated as an internal failure (exit code 3).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: malformed scenarios, inconsistent gradings, gate refusals.
// Maps to exit code 2.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// A checked internal contract failed (d^2 != 0, route disagreement, ...).
// Maps to exit code 3.
class InvariantError : public Error {
public:
  explicit InvariantError(const std::string& what) : Error(what) {}
};

}  // namespace torvan

#endif
