#include "splab/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "splab/error.hpp"

namespace splab {

namespace {

void require_orthonormal(const ComplexMatrix& Q, const Tolerances& tol, const char* what) {
  require_valid(Q, what);
  const double defect = orthonormality_defect(Q);
  if (!(defect <= tol.tol_orth * static_cast<double>(Q.cols()))) {
    std::ostringstream os;
    os << what << ": ||Q*Q - I|| = " << defect;
    throw Error(ErrorKind::NotOrthonormal, os.str());
  }
}

void require_same_shape(const ComplexMatrix& Q1, const ComplexMatrix& Q2) {
  if (Q1.rows() != Q2.rows() || Q1.cols() != Q2.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "subspace bases differ in shape");
  }
  if (Q1.cols() > Q1.rows()) throw Error(ErrorKind::ShapeMismatch, "basis has more columns than rows");
}

}  // namespace

double orthonormality_defect(const ComplexMatrix& Q) {
  const ComplexMatrix G = Q.adjoint() * Q - ComplexMatrix::Identity(Q.cols(), Q.cols());
  return spectral_norm(G);
}

ComplexMatrix orth_complement(const ComplexMatrix& Q, const Tolerances& tol) {
  require_orthonormal(Q, tol, "orth_complement input");
  const Eigen::Index n = Q.rows(), r = Q.cols();
  if (r >= n) throw Error(ErrorKind::ShapeMismatch, "complement of a full-dimensional subspace is empty");

  Eigen::HouseholderQR<ComplexMatrix> qr(Q);
  ComplexMatrix full = ComplexMatrix::Identity(n, n);
  full.applyOnTheLeft(qr.householderQ());
  return full.rightCols(n - r);
}

SubspaceDistance principal_angles(const ComplexMatrix& Q1, const ComplexMatrix& Q2, const Tolerances& tol) {
  require_same_shape(Q1, Q2);
  require_orthonormal(Q1, tol, "first basis");
  require_orthonormal(Q2, tol, "second basis");
  const Eigen::Index n = Q1.rows(), r = Q1.cols();

  SubspaceDistance d;
  d.cosines = singular_values(Q1.adjoint() * Q2).cwiseMax(0.0).cwiseMin(1.0);

  // Sines of the smallest angles from the complement, which avoids the
  // cancellation in 1 - zeta^2. The complement singular values in ascending
  // order pair with the cosines in descending order.
  RealVector comp = RealVector::Zero(r);
  if (r < n) {
    const RealVector s = singular_values(orth_complement(Q1, tol).adjoint() * Q2).cwiseMin(1.0);
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(s.size(), r); ++k) comp(r - 1 - k) = s(k);
  }
  d.sines.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double z = d.cosines(i);
    d.sines(i) = z * z > 0.5 ? comp(i) : std::sqrt(std::max(0.0, 1.0 - z * z));
  }

  d.sin_norm = r > 0 ? d.sines.maxCoeff() : 0.0;
  d.tan_norm = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (d.sines(i) == 0.0) continue;
    const double t = d.cosines(i) == 0.0 ? std::numeric_limits<double>::infinity() : d.sines(i) / d.cosines(i);
    d.tan_norm = std::max(d.tan_norm, t);
  }
  return d;
}

SinThetaCheck sin_theta_norm(const ComplexMatrix& Q1, const ComplexMatrix& Q2, const Tolerances& tol) {
  const SubspaceDistance d = principal_angles(Q1, Q2, tol);
  SinThetaCheck c;
  c.value = d.sin_norm;
  if (Q1.cols() < Q1.rows()) c.complement_norm = spectral_norm(orth_complement(Q1, tol).adjoint() * Q2);
  const double zmin = d.cosines.size() > 0 ? d.cosines.minCoeff() : 1.0;
  c.sqrt_form = std::sqrt(std::max(0.0, 1.0 - zmin * zmin));

  if (!(std::abs(c.value - c.complement_norm) <= tol.cross_tol)) {
    std::ostringstream os;
    os << "max principal sine " << c.value << " vs ||Q1_perp^* Q2|| " << c.complement_norm;
    throw Error(ErrorKind::CrossCheckFailure, os.str());
  }
  return c;
}

double tan_theta_norm(const ComplexMatrix& Q1, const ComplexMatrix& Q2, const Tolerances& tol) {
  return principal_angles(Q1, Q2, tol).tan_norm;
}

}  // namespace splab
