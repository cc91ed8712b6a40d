#pragma once

#include <stdexcept>
#include <string>

namespace axmcf {

/// Bad argument at an API boundary (J < 3, dt <= 0, unknown norm kind, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A discrete state violates the hypotheses a scheme needs (x1 > 0, |X_rho| > 0).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateMesh : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedTopology : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be opened, read or written, or does not follow its format.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace axmcf
