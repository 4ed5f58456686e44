#pragma once

#include <stdexcept>

namespace sigcomp {

/// Raised when a factorization fails or an objective or iterate stops being finite.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigcomp
