#pragma once

#include <stdexcept>
#include <string>

namespace spectral_indep {

// Point outside a basis' native domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Basis index, level or cell out of range.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Operation invoked with the wrong basis family.
struct KindError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed, empty or non-finite input data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration (parameters, flag combinations).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Method not available for the requested basis.
struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace spectral_indep
