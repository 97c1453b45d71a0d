#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hilop {

/// Argument outside an operation's domain (bad parameter, point outside the disk, ...).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Measure specification violating the admissibility rules (p <= -1, atom at 1, ...).
struct invalid_measure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Quadrature or iteration failed to converge; carries the best estimate so far.
struct numeric_error : std::runtime_error {
  double partial_estimate;
  numeric_error(const std::string& what, double partial)
      : std::runtime_error(what), partial_estimate(partial) {}
};

/// Requested truncation cannot meet the tolerance; carries a size that would.
struct truncation_error : std::runtime_error {
  std::size_t suggested;
  truncation_error(const std::string& what, std::size_t suggested_size)
      : std::runtime_error(what), suggested(suggested_size) {}
};

}  // namespace hilop
