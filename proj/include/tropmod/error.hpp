#pragma once

#include <stdexcept>
#include <string>

namespace tropmod {

enum class ErrorCode {
  InvalidGraph,
  InvalidSubset,
  TooLarge,
  DisconnectedGraph,
  NotABuildingSet,
  ConeNotInFan,
  NotPure,
  NoHeavyVertex,
  FewerThanTwoHeavy,
  InvalidEmbedding,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotABuildingSet: return "NotABuildingSet";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NoHeavyVertex: return "NoHeavyVertex";
    case ErrorCode::FewerThanTwoHeavy: return "FewerThanTwoHeavy";
    case ErrorCode::InvalidEmbedding: return "InvalidEmbedding";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace tropmod
