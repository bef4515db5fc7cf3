#include "splab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "splab/error.hpp"

namespace splab {

namespace {

ComplexMatrix thin_q(const Eigen::HouseholderQR<ComplexMatrix>& qr, Eigen::Index cols) {
  const Eigen::Index n = qr.matrixQR().rows();
  ComplexMatrix Q = ComplexMatrix::Identity(n, cols);
  Q.applyOnTheLeft(qr.householderQ());
  return Q;
}

// Strict weak order: |a| desc, then Re desc, then Im desc.
bool eigen_order(const cd& a, const cd& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

void require_valid(const ComplexMatrix& Z, const char* what) {
  if (Z.rows() < 1 || Z.cols() < 1) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must have at least one row and column");
  }
  if (!Z.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN or Inf entries");
  }
}

QRFactors qr_decompose(const ComplexMatrix& Z, const Tolerances& tol) {
  require_valid(Z, "QR input");
  const Eigen::Index n = Z.rows(), m = Z.cols();
  if (n < m) {
    throw Error(ErrorKind::RankDeficient, "QR input has more columns than rows");
  }
  const RealVector s = singular_values(Z);
  if (s(0) == 0.0 || s(m - 1) <= tol.rank_tol * s(0)) {
    std::ostringstream os;
    os << "sigma_min/sigma_max = " << (s(0) == 0.0 ? 0.0 : s(m - 1) / s(0));
    throw Error(ErrorKind::RankDeficient, os.str());
  }

  Eigen::HouseholderQR<ComplexMatrix> qr(Z);
  QRFactors f;
  f.Q = thin_q(qr, m);
  f.R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

  // Rotate each Q column so that R has a real nonnegative diagonal.
  for (Eigen::Index k = 0; k < m; ++k) {
    const cd d = f.R(k, k);
    const double ad = std::abs(d);
    if (ad == 0.0) continue;
    const cd phase = d / ad;
    f.Q.col(k) *= phase;
    f.R.row(k) *= std::conj(phase);
    f.R(k, k) = cd(ad, 0.0);
  }
  return f;
}

SvdFactors svd(const ComplexMatrix& Z) {
  require_valid(Z, "SVD input");
  Eigen::JacobiSVD<ComplexMatrix> js(Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f{js.matrixU(), js.singularValues(), js.matrixV()};
  if (!f.U.allFinite() || !f.V.allFinite() || !f.S.allFinite()) {
    throw Error(ErrorKind::ConvergenceFailure, "SVD produced non-finite factors");
  }
  return f;
}

RealVector singular_values(const ComplexMatrix& Z) {
  require_valid(Z, "SVD input");
  RealVector s;
  if (std::min(Z.rows(), Z.cols()) > 64) {
    Eigen::BDCSVD<ComplexMatrix> bs(Z);
    s = bs.singularValues();
  } else {
    Eigen::JacobiSVD<ComplexMatrix> js(Z);
    s = js.singularValues();
  }
  if (!s.allFinite()) {
    throw Error(ErrorKind::ConvergenceFailure, "singular values are not finite");
  }
  return s;
}

ComplexVector eigenvalues(const ComplexMatrix& A) {
  require_valid(A, "eigenvalue input");
  if (A.rows() != A.cols()) throw Error(ErrorKind::ShapeMismatch, "eigenvalues need a square matrix");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(A, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "complex Schur iteration did not converge");
  }
  return es.eigenvalues();
}

EigenDecomposition eig(const ComplexMatrix& A, const Tolerances& tol) {
  require_valid(A, "eig input");
  if (A.rows() != A.cols()) throw Error(ErrorKind::ShapeMismatch, "eig needs a square matrix");
  const Eigen::Index n = A.rows();

  // Hessenberg reduction + shifted QR to Schur form, eigenvectors by
  // back-substitution on the triangular factor.
  Eigen::ComplexEigenSolver<ComplexMatrix> es(A, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "complex Schur iteration did not converge");
  }
  const ComplexVector& raw_lambda = es.eigenvalues();
  const ComplexMatrix& raw_X = es.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eigen_order(raw_lambda(a), raw_lambda(b));
  });

  EigenDecomposition ed;
  ed.lambda.resize(n);
  ed.X.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    ed.lambda(j) = raw_lambda(src);
    ComplexVector x = raw_X.col(src);
    const double nx = x.norm();
    if (nx == 0.0 || !std::isfinite(nx)) {
      throw Error(ErrorKind::ConvergenceFailure, "degenerate eigenvector");
    }
    x /= nx;
    Eigen::Index kmax = 0;
    double amax = -1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ak = std::abs(x(k));
      if (ak > amax) {
        amax = ak;
        kmax = k;
      }
    }
    x *= std::conj(x(kmax)) / amax;
    x(kmax) = cd(x(kmax).real(), 0.0);
    ed.X.col(j) = x;
  }

  const RealVector s = singular_values(ed.X);
  const double smin = s(n - 1);
  ed.kappa_X = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(ed.kappa_X <= tol.kappa_cap)) {
    std::ostringstream os;
    os << "kappa_2(X) ~ " << ed.kappa_X << " exceeds cap " << tol.kappa_cap;
    throw Error(ErrorKind::NotDiagonalizable, os.str());
  }

  ed.V = ed.X.partialPivLu().inverse().adjoint();

  const double normA = std::max(spectral_norm(A), std::numeric_limits<double>::min());
  const double resid = (A * ed.X - ed.X * ed.lambda.asDiagonal()).norm();
  if (resid > tol.tol_eig * normA * std::sqrt(static_cast<double>(n))) {
    std::ostringstream os;
    os << "eigen-residual " << resid << " exceeds tolerance";
    throw Error(ErrorKind::ConvergenceFailure, os.str());
  }
  return ed;
}

ComplexMatrix inverse(const ComplexMatrix& Z, const Tolerances& tol) {
  require_valid(Z, "inverse input");
  if (Z.rows() != Z.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse needs a square matrix");
  const RealVector s = singular_values(Z);
  if (s(0) == 0.0 || s(s.size() - 1) <= tol.rank_tol * s(0)) {
    throw Error(ErrorKind::Singular, "matrix is singular to working precision");
  }
  return Z.partialPivLu().inverse();
}

ComplexMatrix solve(const ComplexMatrix& Z, const ComplexMatrix& B, const Tolerances& tol) {
  require_valid(Z, "solve matrix");
  require_valid(B, "solve right-hand side");
  if (Z.rows() != Z.cols() || B.rows() != Z.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "solve: incompatible shapes");
  }
  const RealVector s = singular_values(Z);
  if (s(0) == 0.0 || s(s.size() - 1) <= tol.rank_tol * s(0)) {
    throw Error(ErrorKind::Singular, "matrix is singular to working precision");
  }
  return Z.partialPivLu().solve(B);
}

double spectral_norm(const ComplexMatrix& Z) {
  if (Z.size() == 0) return 0.0;
  return singular_values(Z)(0);
}

double frobenius_norm(const ComplexMatrix& Z) { return Z.norm(); }

double spectral_radius(const ComplexVector& ev) {
  double rho = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev(i)));
  return rho;
}

double spectral_radius(const ComplexMatrix& Z) { return spectral_radius(eigenvalues(Z)); }

double cond2(const ComplexMatrix& Z) {
  const RealVector s = singular_values(Z);
  const double smin = s(s.size() - 1);
  if (smin == 0.0) throw Error(ErrorKind::Singular, "cond2 of a rank-deficient matrix");
  return s(0) / smin;
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  const Eigen::Index ar = A.rows(), ac = A.cols(), br = B.rows(), bc = B.cols();
  constexpr Eigen::Index kMaxEntries = Eigen::Index{1} << 28;
  if (ar * br > 0 && ac * bc > kMaxEntries / (ar * br)) {
    throw Error(ErrorKind::SizeCap, "Kronecker product too large");
  }
  ComplexMatrix K(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      K.block(i * br, j * bc, br, bc) = A(i, j) * B;
    }
  }
  return K;
}

ComplexMatrix take_columns(const ComplexMatrix& Z, const std::vector<Eigen::Index>& cols) {
  ComplexMatrix out(Z.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = Z.col(cols[k]);
  return out;
}

ComplexVector take(const ComplexVector& v, const std::vector<Eigen::Index>& idx) {
  ComplexVector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = v(idx[k]);
  return out;
}

}  // namespace splab
