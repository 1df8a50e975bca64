#pragma once

#include <stdexcept>
#include <string>

namespace rotqfi {

// Precondition or input validation failure. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical path failed a self-consistency check (e.g. a finite-difference
// generator that is not Hermitian). The CLI maps this to exit code 3.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a Fisher matrix has no usable inverse.
class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(double det)
      : std::runtime_error("singular matrix (det = " + std::to_string(det) + ")"), det_(det) {}
  double determinant() const noexcept { return det_; }

 private:
  double det_;
};

}  // namespace rotqfi
