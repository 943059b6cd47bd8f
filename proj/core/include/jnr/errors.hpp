#pragma once

#include <stdexcept>

namespace jnr {

// Bad parameters or out-of-contract calls. The CLI maps these to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical contract breaches (conditioning, solver residuals, divergent
// integrands). The CLI maps these to exit code 1.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jnr
