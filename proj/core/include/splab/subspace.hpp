#pragma once

#include "splab/matrix.hpp"

namespace splab {

/// Principal angles between two r-dimensional subspaces given by orthonormal
/// bases. cosines are nonincreasing, sines pair with them index by index.
struct SubspaceDistance {
  RealVector cosines;
  RealVector sines;
  double sin_norm = 0.0;
  double tan_norm = 0.0;  // +inf when some cosine is zero
};

SubspaceDistance principal_angles(const ComplexMatrix& Q1, const ComplexMatrix& Q2,
                                  const Tolerances& tol = default_tolerances());

/// Orthonormal basis of the orthogonal complement of span(Q); Q is n x r, r < n.
ComplexMatrix orth_complement(const ComplexMatrix& Q, const Tolerances& tol = default_tolerances());

struct SinThetaCheck {
  double value = 0.0;            // largest principal sine
  double complement_norm = 0.0;  // ||Q1_perp^* Q2||
  double sqrt_form = 0.0;        // sqrt(1 - sigma_min(Q1^* Q2)^2)
};

/// Largest principal sine, cross-checked against ||Q1_perp^* Q2|| to
/// cross_tol. The sqrt form is reported; it carries only about half the
/// working digits for small angles.
SinThetaCheck sin_theta_norm(const ComplexMatrix& Q1, const ComplexMatrix& Q2,
                             const Tolerances& tol = default_tolerances());

double tan_theta_norm(const ComplexMatrix& Q1, const ComplexMatrix& Q2,
                      const Tolerances& tol = default_tolerances());

/// ||Q^*Q - I|| (spectral norm).
double orthonormality_defect(const ComplexMatrix& Q);

}  // namespace splab
