#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace projrep {

enum class ErrorKind {
  // group_core
  NoIdentity,
  MissingInverse,
  NonAssociative,
  BadTable,
  BadRadius,
  // ray_space
  DimMismatch,
  ZeroVector,
  NotUnitary,
  // ray_rep
  NotScalar,
  NotUnimodular,
  DependentStates,
  // gauge_fixing
  EmptyNeighborhood,
  BadAlpha,
  NotAdmissible,
  NotOrthogonal,
  // cohomology
  GroupMismatch,
  InexactPhases,
  BudgetExceeded,
  NotCommuting,
  // central_extension
  ZeroScale,
  NotEquivalentExponents,
  // wigner_reconstruction
  NotASymmetry,
  DegenerateOverlap,
  BranchInconsistent,
  AmbiguousBranch,
  // cli_io
  ParseError,
  ValidationError,
  UnknownCommand,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::MissingInverse: return "MissingInverse";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadTable: return "BadTable";
    case ErrorKind::BadRadius: return "BadRadius";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotScalar: return "NotScalar";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::DependentStates: return "DependentStates";
    case ErrorKind::EmptyNeighborhood: return "EmptyNeighborhood";
    case ErrorKind::BadAlpha: return "BadAlpha";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::InexactPhases: return "InexactPhases";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::NotEquivalentExponents: return "NotEquivalentExponents";
    case ErrorKind::NotASymmetry: return "NotASymmetry";
    case ErrorKind::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorKind::BranchInconsistent: return "BranchInconsistent";
    case ErrorKind::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

/// Every library failure. The witness is machine-readable and names the
/// offending element(s), triple, pair or residual.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        nlohmann::json witness = nlohmann::json::object())
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  nlohmann::json witness_;
};

}  // namespace projrep
