#include "splab/config.hpp"
#include "splab/error.hpp"

namespace splab {

bool Tolerances::set(std::string_view key, double value) {
  if (key == "tol_eig") tol_eig = value;
  else if (key == "tol_fact") tol_fact = value;
  else if (key == "rank_tol") rank_tol = value;
  else if (key == "kappa_cap") kappa_cap = value;
  else if (key == "tol_orth") tol_orth = value;
  else if (key == "cross_tol") cross_tol = value;
  else if (key == "disk_tol") disk_tol = value;
  else if (key == "assign_tol") assign_tol = value;
  else if (key == "contour_margin") contour_margin = value;
  else if (key == "resolvent_tol") resolvent_tol = value;
  else if (key == "size_cap") size_cap = value;
  else return false;
  return true;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::EmptySide: return "EmptySide";
    case ErrorKind::BoundaryAmbiguity: return "BoundaryAmbiguity";
    case ErrorKind::AssignmentAmbiguous: return "AssignmentAmbiguous";
    case ErrorKind::GapViolated: return "GapViolated";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::EnclosureViolated: return "EnclosureViolated";
    case ErrorKind::ResolventSingular: return "ResolventSingular";
    case ErrorKind::SpecViolation: return "SpecViolation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient:
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::NotDiagonalizable:
    case ErrorKind::Singular:
    case ErrorKind::NotOrthonormal:
    case ErrorKind::CrossCheckFailure:
    case ErrorKind::ResolventSingular:
    case ErrorKind::AssignmentAmbiguous:
      return true;
    default:
      return false;
  }
}

}  // namespace splab
