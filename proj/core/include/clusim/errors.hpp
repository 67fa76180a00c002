#pragma once

#include <stdexcept>
#include <string>

namespace clusim {

/// Bad configuration: schema values, rule specs, metric parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (length/arity/universe mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Query for an id that the container does not hold.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Input file could not be loaded. The message carries file (and line when known).
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clusim
