#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycdec {

enum class ErrorCode {
  Contract,          // precondition or dimension mismatch
  Parse,             // malformed input text
  NoSolution,
  Infeasible,
  NotGeneralPosition,
  ZeroNotInterior,
  TooLarge,
  NotBalanced,
  OracleExhausted,
  EmptyGraph,
  NotBistochastic,
  NoPerfectMatching,
  NotHomologous,
  NotInRe,
  NegativeEdgeWeight,
  InvalidComplex,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cycdec
