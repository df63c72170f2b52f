#include "cycdec/error.hpp"

namespace cycdec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Contract: return "ContractViolation";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::ZeroNotInterior: return "ZeroNotInterior";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotBalanced: return "NotBalanced";
    case ErrorCode::OracleExhausted: return "OracleExhausted";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NotBistochastic: return "NotBistochastic";
    case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::NotHomologous: return "NotHomologous";
    case ErrorCode::NotInRe: return "NotInRe";
    case ErrorCode::NegativeEdgeWeight: return "NegativeEdgeWeight";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
  }
  return "Unknown";
}

}  // namespace cycdec
