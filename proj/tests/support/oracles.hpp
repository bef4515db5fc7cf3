#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline double spectral(const Mat& Z) {
  Eigen::JacobiSVD<Mat> s(Z);
  return s.singularValues()(0);
}

inline double sigma_min(const Mat& Z) {
  Eigen::JacobiSVD<Mat> s(Z);
  return s.singularValues()(s.singularValues().size() - 1);
}

inline Mat random_complex(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> nd;
  Mat Z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) Z(i, j) = cd(nd(g), nd(g));
  }
  return Z;
}

/// Orthonormal basis by modified Gram-Schmidt, run twice.
inline Mat gram_schmidt(Mat Z) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < Z.cols(); ++k) {
      for (Eigen::Index j = 0; j < k; ++j) Z.col(k) -= Z.col(j).dot(Z.col(k)) * Z.col(j);
      Z.col(k).normalize();
    }
  }
  return Z;
}

/// Random diagonalizable matrix with prescribed spectrum.
inline Mat with_spectrum(std::mt19937_64& g, const Vec& lambda) {
  const Eigen::Index n = lambda.size();
  Mat X = random_complex(g, n, n);
  return X * lambda.asDiagonal() * X.inverse();
}

/// Explicit Kronecker matrix of T -> T L1 - L2 T, entry by entry.
inline Mat sylvester_matrix(const Mat& L1, const Mat& L2) {
  const Eigen::Index r = L1.rows(), m = L2.rows();
  Mat K = Mat::Zero(r * m, r * m);
  // vec index of T(p, q) is q m + p.
  for (Eigen::Index p = 0; p < m; ++p) {
    for (Eigen::Index q = 0; q < r; ++q) {
      const Eigen::Index row = q * m + p;
      for (Eigen::Index k = 0; k < r; ++k) K(row, k * m + p) += L1(k, q);
      for (Eigen::Index k = 0; k < m; ++k) K(row, q * m + k) -= L2(p, k);
    }
  }
  return K;
}

inline double delta1(const Vec& a, const Vec& b) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) best = std::min(best, std::abs(a(i) - b(j)));
  }
  return best;
}

inline double margin(const Vec& a, const Vec& b, cd t) {
  double mina = 1e300, maxa = 0, minb = 1e300, maxb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    mina = std::min(mina, std::abs(a(i) - t));
    maxa = std::max(maxa, std::abs(a(i) - t));
  }
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    minb = std::min(minb, std::abs(b(i) - t));
    maxb = std::max(maxb, std::abs(b(i) - t));
  }
  return std::max(mina - maxb, minb - maxa);
}

/// Dense grid maximum of the disk-separation margin over a box.
inline double delta0_grid(const Vec& a, const Vec& b, int steps = 400) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const Vec* v : {&a, &b}) {
    for (Eigen::Index i = 0; i < v->size(); ++i) {
      x0 = std::min(x0, (*v)(i).real());
      x1 = std::max(x1, (*v)(i).real());
      y0 = std::min(y0, (*v)(i).imag());
      y1 = std::max(y1, (*v)(i).imag());
    }
  }
  const double w = std::max({x1 - x0, y1 - y0, 1e-12});
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const cd t(cx - w + 2 * w * i / steps, cy - w + 2 * w * j / steps);
      best = std::max(best, margin(a, b, t));
    }
  }
  return best;
}

/// Minimum assignment cost by enumerating permutations (n <= 8).
inline double assignment_brute(const Eigen::MatrixXd& C) {
  std::vector<int> p(static_cast<std::size_t>(C.rows()));
  std::iota(p.begin(), p.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += C(static_cast<Eigen::Index>(i), p[i]);
    best = std::min(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Largest principal sine via projector difference: ||P1 - P2|| for equal dimensions.
inline double sin_by_projectors(const Mat& Q1, const Mat& Q2) {
  return spectral(Q1 * Q1.adjoint() - Q2 * Q2.adjoint());
}

/// Coefficients of prod (z - x_j) by polynomial multiplication; c(0) = 1.
inline Vec poly_from_roots(const Vec& x) {
  Vec c = Vec::Zero(x.size() + 1);
  c(0) = 1.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vec next = Vec::Zero(x.size() + 1);
    for (Eigen::Index k = 0; k <= j; ++k) {
      next(k) += c(k);
      next(k + 1) -= x(j) * c(k);
    }
    c = next;
  }
  return c;
}

}  // namespace oracle
