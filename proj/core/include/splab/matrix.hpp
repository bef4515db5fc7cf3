#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "splab/config.hpp"

namespace splab {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws NonFinite / InvalidArgument unless Z is non-empty with finite entries.
void require_valid(const ComplexMatrix& Z, const char* what = "matrix");

/// Thin QR with the diagonal of R real and nonnegative.
struct QRFactors {
  ComplexMatrix Q;  // n x m, orthonormal columns
  ComplexMatrix R;  // m x m, upper triangular
};

struct SvdFactors {
  ComplexMatrix U;
  RealVector S;  // nonincreasing
  ComplexMatrix V;
};

/// A = X diag(lambda) X^{-1} with unit-norm columns of X and V = (X^{-1})^*.
///
/// Eigenvalues are ordered by descending magnitude, ties broken by descending
/// real part and then descending imaginary part. Each eigenvector is rotated
/// so that its largest-magnitude entry is real and positive.
struct EigenDecomposition {
  ComplexMatrix X;
  ComplexVector lambda;
  ComplexMatrix V;
  double kappa_X = 1.0;

  Eigen::Index size() const { return lambda.size(); }
};

QRFactors qr_decompose(const ComplexMatrix& Z, const Tolerances& tol = default_tolerances());

SvdFactors svd(const ComplexMatrix& Z);
RealVector singular_values(const ComplexMatrix& Z);

EigenDecomposition eig(const ComplexMatrix& A, const Tolerances& tol = default_tolerances());

/// Eigenvalues only; no diagonalizability requirement.
ComplexVector eigenvalues(const ComplexMatrix& A);

ComplexMatrix inverse(const ComplexMatrix& Z, const Tolerances& tol = default_tolerances());
ComplexMatrix solve(const ComplexMatrix& Z, const ComplexMatrix& B,
                    const Tolerances& tol = default_tolerances());

double spectral_norm(const ComplexMatrix& Z);
double frobenius_norm(const ComplexMatrix& Z);
double spectral_radius(const ComplexMatrix& Z);
double spectral_radius(const ComplexVector& eigenvalues);
/// sigma_max / sigma_min; throws Singular when sigma_min is zero.
double cond2(const ComplexMatrix& Z);

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

/// Columns of Z restricted to `cols`, in the given order.
ComplexMatrix take_columns(const ComplexMatrix& Z, const std::vector<Eigen::Index>& cols);
ComplexVector take(const ComplexVector& v, const std::vector<Eigen::Index>& idx);

}  // namespace splab
