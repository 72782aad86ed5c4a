#pragma once

#include <stdexcept>
#include <string>

namespace qd {

// Thrown when a matrix fails the density-operator checks (hermiticity,
// unit trace, positivity) beyond the numerical floor.
class not_a_state : public std::runtime_error {
public:
  explicit not_a_state(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the rank predictor when the input state is outside the two
// classes it covers (product states, rank-2 with maximally mixed marginals).
class unsupported_state_class : public std::runtime_error {
public:
  explicit unsupported_state_class(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when two routes that must agree (correlation-matrix rank vs the
// Fano-block rank formula) disagree at the requested tolerance.
class internal_inconsistency : public std::runtime_error {
public:
  explicit internal_inconsistency(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace qd
