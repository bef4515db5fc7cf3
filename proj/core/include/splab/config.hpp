#pragma once

#include <string_view>

namespace splab {

/// Numerical tolerances shared by every module. One knob per test class;
/// callers override individual fields (the CLI exposes them via --tol KEY=VAL).
struct Tolerances {
  double tol_eig = 1e-10;    // eigen-residual, relative to ||A||
  double tol_fact = 1e-12;   // factorization reconstruction, relative to ||Z||
  double rank_tol = 1e-13;   // sigma_min / ||Z|| below this is rank deficient
  double kappa_cap = 1e13;   // kappa_2(X) above this is treated as non-diagonalizable
  double tol_orth = 1e-12;   // ||Q*Q - I|| per column
  double cross_tol = 1e-10;  // agreement of the two sin-theta formulas
  double disk_tol = 1e-9;    // relative to disk radius
  double assign_tol = 1e-12; // relative to spectral scale
  double contour_margin = 0.05;
  double resolvent_tol = 1e-10;  // relative to contour radius
  double size_cap = 4096;        // r*(n-r) limit for the Kronecker sep operator

  /// Sets a field by name. Returns false for unknown keys.
  bool set(std::string_view key, double value);
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace splab
