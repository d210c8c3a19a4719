#pragma once

#include <stdexcept>
#include <string>

namespace entcost {

// Bad user-supplied argument (index out of range, malformed spec, ...).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Register or matrix size beyond the configured dense cap.
struct SizeError : ArgumentError {
  using ArgumentError::ArgumentError;
};

// Violated numerical contract (non-Hermitian, non-unitary, unnormalized, ...).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace entcost
