#pragma once

#include <stdexcept>
#include <string>

namespace linerate {

// Net heat balance is negative: solar gain exceeds what convection and
// radiation can dissipate at the design surface temperature. Distinct from
// input-validation errors so callers can turn it into a zero rating instead
// of aborting.
class NoThermalHeadroom : public std::runtime_error {
 public:
  explicit NoThermalHeadroom(const std::string& what) : std::runtime_error(what) {}
};

// Optimization failure (unbounded problem, iteration limit, corrupt case).
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

// File-system / parse failures; the CLI maps these to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace linerate
