#pragma once

#include <stdexcept>
#include <string>

namespace dsred {

enum class ErrorCode {
  ZeroDenominator,
  PoleAtPoint,
  InconsistentRadical,
  RadicandZero,
  DegenerateParameter,
  CriticalLevel,
  PoleAtC,
  NotDiagonalizable,
  SingularGram,
  NotInCentralizer,
  NoSolution,
  AmbiguousSolution,
  ConsistencyError,
  SyntaxError,
  ConfigParse,
  Unsupported,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::InconsistentRadical: return "InconsistentRadical";
    case ErrorCode::RadicandZero: return "RadicandZero";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::CriticalLevel: return "CriticalLevel";
    case ErrorCode::PoleAtC: return "PoleAtC";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::NotInCentralizer: return "NotInCentralizer";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::AmbiguousSolution: return "AmbiguousSolution";
    case ErrorCode::ConsistencyError: return "ConsistencyError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dsred
