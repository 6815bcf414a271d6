#pragma once

#include <stdexcept>
#include <string>

namespace slx {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag (used by the CLI error object on stderr).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Input violates a documented precondition or type invariant.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error("ContractError", message) {}
  ContractError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

class NonPositiveExponentOnVanishingFunction : public ContractError {
 public:
  explicit NonPositiveExponentOnVanishingFunction(const std::string& message)
      : ContractError("NonPositiveExponentOnVanishingFunction", message) {}
};

class ZeroPotential : public ContractError {
 public:
  explicit ZeroPotential(const std::string& message)
      : ContractError("ZeroPotential", message) {}
};

class NegativeResult : public ContractError {
 public:
  explicit NegativeResult(const std::string& message)
      : ContractError("NegativeResult", message) {}
};

class ZeroFunction : public ContractError {
 public:
  explicit ZeroFunction(const std::string& message)
      : ContractError("ZeroFunction", message) {}
};

/// Numerical failures. The CLI maps these to exit code 3.
class SolverError : public Error {
 public:
  SolverError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

class BracketNotFound : public SolverError {
 public:
  explicit BracketNotFound(const std::string& message)
      : SolverError("BracketNotFound", message) {}
};

class NormBudgetExceeded : public SolverError {
 public:
  NormBudgetExceeded(const std::string& message, double suggested_height)
      : SolverError("NormBudgetExceeded", message),
        suggested_height_(suggested_height) {}

  /// A spike height that would satisfy the budget with the other
  /// parameters unchanged.
  double suggested_height() const noexcept { return suggested_height_; }

 private:
  double suggested_height_;
};

class NonFiniteInput : public SolverError {
 public:
  explicit NonFiniteInput(const std::string& message)
      : SolverError("NonFiniteInput", message) {}
};

}  // namespace slx
