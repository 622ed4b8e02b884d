#pragma once

#include <stdexcept>
#include <string>

namespace sobolev {

/// Bad input: wrong domain kind, out-of-range order, size mismatch.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A solve or factorization failed (non-SPD matrix, CG stagnation, divergence).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stopping rule was never satisfied within the iteration budget.
class NonTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sobolev
