#pragma once

#include <stdexcept>
#include <string>

namespace fixopt {

/// A caller broke an operation's precondition (mismatched base points,
/// out-of-range parameters, ragged inputs).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A convex-function oracle produced a zero subgradient at a point where the
/// function is positive.
class OracleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN in a run or a violated theorem bound.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace fixopt
