#pragma once

#include <stdexcept>
#include <string>

namespace darkpot {

// Rejected arguments: bad grids, invalid profiles, dimension mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure did not reach its contract (non-convergence,
// missing bracket, degenerate eigensystem).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace darkpot
