#include "splab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "splab/error.hpp"

namespace splab {

namespace {

double min_singular(const ComplexMatrix& Z) {
  const RealVector s = singular_values(Z);
  return s(s.size() - 1);
}

cd node(const ContourSpec& spec, int k) {
  const double theta = 2.0 * std::numbers::pi * k / spec.nodes;
  return spec.center + spec.radius * cd(std::cos(theta), std::sin(theta));
}

}  // namespace

ComplexMatrix build_F(const ComplexVector& lambda1_tilde, const ComplexVector& lambda2) {
  ComplexMatrix F(lambda2.size(), lambda1_tilde.size());
  for (Eigen::Index i = 0; i < lambda2.size(); ++i) {
    for (Eigen::Index j = 0; j < lambda1_tilde.size(); ++j) {
      const cd d = lambda1_tilde(j) - lambda2(i);
      if (d == cd(0.0, 0.0)) throw Error(ErrorKind::GapViolated, "perturbed eigenvalue coincides with l2");
      F(i, j) = 1.0 / d;
    }
  }
  return F;
}

OracleContext make_oracle_context(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralPartition& part,
                                  const SpectralPartition& part_tilde) {
  if (part.r != part_tilde.r) throw Error(ErrorKind::ShapeMismatch, "partitions differ in r");
  OracleContext ctx;
  ctx.part = part;
  ctx.part_tilde = part_tilde;
  ctx.A = A;
  ctx.dA = dA;
  ctx.A_tilde = A + dA;
  ctx.F = build_F(part_tilde.lambda1, part.lambda2);
  ctx.W = part.V2.adjoint() * dA * part_tilde.X1;
  const ComplexMatrix& R = part_tilde.qr_X1.R;
  // (F o W) R^{-1} by a triangular solve from the right.
  ctx.M = R.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(ctx.F.cwiseProduct(ctx.W));
  return ctx;
}

Residual lemma32_residual(const OracleContext& ctx) {
  const ComplexMatrix lhs = ctx.part.qr_V2.Q.adjoint() * ctx.part_tilde.qr_X1.Q;
  const ComplexMatrix& Rv = ctx.part.qr_V2.R;
  const ComplexMatrix rhs = Rv.adjoint().triangularView<Eigen::Lower>().solve(ctx.M);
  Residual res;
  res.residual = spectral_norm(lhs - rhs);
  const double cond = cond2(Rv) * cond2(ctx.part_tilde.qr_X1.R);
  res.threshold = 1e-8 * std::max(1.0, spectral_norm(rhs)) * std::max(1.0, cond / 1e8);
  return res;
}

ComplexVector elementary_symmetric(const ComplexVector& lhat) {
  const Eigen::Index r = lhat.size();
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "elementary_symmetric needs r >= 1");
  // e(k) holds the degree-k elementary symmetric function of the values seen so far.
  ComplexVector e = ComplexVector::Zero(r + 1);
  e(0) = 1.0;
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index k = j + 1; k >= 1; --k) e(k) += lhat(j) * e(k - 1);
  }
  return e.tail(r);
}

double row_sigma_r(const OracleContext& ctx, Eigen::Index i) {
  const ComplexVector lhat = ctx.part_tilde.lambda1.array() - ctx.part.lambda2(i);
  return std::abs(elementary_symmetric(lhat)(lhat.size() - 1));
}

ComplexMatrix row_formula_m(const OracleContext& ctx, Eigen::Index i) {
  const Eigen::Index r = ctx.part.r, n = ctx.part.n();
  if (i < 0 || i >= n - r) throw Error(ErrorKind::IndexOutOfRange, "row " + std::to_string(i));
  const cd mu = ctx.part.lambda2(i);
  const ComplexVector lhat = ctx.part_tilde.lambda1.array() - mu;
  for (Eigen::Index j = 0; j < r; ++j) {
    if (lhat(j) == cd(0.0, 0.0)) throw Error(ErrorKind::GapViolated, "lhat_j = 0");
  }
  const ComplexVector sigma = elementary_symmetric(lhat);

  const ComplexMatrix& Q = ctx.part_tilde.qr_X1.Q;
  ComplexMatrix Y = Q;
  double sign = 1.0;
  for (Eigen::Index k = 1; k <= r - 1; ++k) {
    sign = -sign;
    Y = ctx.A_tilde * Y - mu * Y + (sign * sigma(k - 1)) * Q;
  }
  const double lead = (r + 1) % 2 == 0 ? 1.0 : -1.0;
  const ComplexMatrix b = ctx.part.V2.col(i).adjoint() * ctx.dA;
  return (b * Y) / (lead * sigma(r - 1));
}

ComplexMatrix assemble_M_rows(const OracleContext& ctx) {
  const Eigen::Index rows = ctx.part.n() - ctx.part.r;
  ComplexMatrix M(rows, ctx.part.r);
  for (Eigen::Index i = 0; i < rows; ++i) M.row(i) = row_formula_m(ctx, i);
  return M;
}

std::vector<RowChain> bound_chain(const OracleContext& ctx) {
  const Eigen::Index rows = ctx.part.n() - ctx.part.r;
  const double a = spectral_norm(ctx.A) + spectral_norm(ctx.dA) + spectral_radius(ctx.part.lambda2);
  std::vector<RowChain> out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const ComplexMatrix b = ctx.part.V2.col(i).adjoint() * ctx.dA;
    double prod = 1.0;
    for (Eigen::Index j = 0; j < ctx.part.r; ++j) {
      prod *= 1.0 + a / std::abs(ctx.part_tilde.lambda1(j) - ctx.part.lambda2(i));
    }
    out.push_back({ctx.M.row(i).norm(), b.norm() / a * prod});
  }
  return out;
}

void require_enclosure(const ContourSpec& spec, const ComplexVector& inside, const ComplexVector& outside,
                       const Tolerances& tol) {
  if (!(spec.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "contour radius must be positive");
  if (spec.nodes < 16) throw Error(ErrorKind::InvalidArgument, "contour needs at least 16 nodes");
  const double lo = (1.0 - tol.contour_margin) * spec.radius;
  const double hi = (1.0 + tol.contour_margin) * spec.radius;
  for (Eigen::Index k = 0; k < inside.size(); ++k) {
    if (!(std::abs(inside(k) - spec.center) <= lo)) {
      std::ostringstream os;
      os << "eigenvalue " << inside(k) << " is not inside the contour with margin";
      throw Error(ErrorKind::EnclosureViolated, os.str());
    }
  }
  for (Eigen::Index k = 0; k < outside.size(); ++k) {
    if (!(std::abs(outside(k) - spec.center) >= hi)) {
      std::ostringstream os;
      os << "eigenvalue " << outside(k) << " is not outside the contour with margin";
      throw Error(ErrorKind::EnclosureViolated, os.str());
    }
  }
}

ComplexMatrix contour_projector(const ComplexMatrix& A, const SpectralPartition& part, const ContourSpec& spec,
                                Side side, const Tolerances& tol) {
  const bool studied = side == Side::Studied;
  require_enclosure(spec, studied ? part.lambda1 : part.lambda2, studied ? part.lambda2 : part.lambda1, tol);
  const Eigen::Index n = A.rows();
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);

  // dz = i (z - c) dtheta, so (1 / 2 pi i) \oint f dz ~ (1 / N) sum (z_k - c) f(z_k).
  ComplexMatrix P = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < spec.nodes; ++k) {
    const cd z = node(spec, k);
    const ComplexMatrix Rz = z * I - A;
    if (min_singular(Rz) <= tol.resolvent_tol * spec.radius) {
      throw Error(ErrorKind::ResolventSingular, "contour node lies on the spectrum");
    }
    P += (z - spec.center) * Rz.partialPivLu().solve(I);
  }
  return P / static_cast<double>(spec.nodes);
}

ResidueG residue_G(const OracleContext& ctx, const ContourSpec& spec, const Tolerances& tol) {
  const ComplexVector& l2 = ctx.part.lambda2;
  const ComplexVector& lt1 = ctx.part_tilde.lambda1;
  ComplexVector inside(ctx.part.r + lt1.size()), outside(l2.size() + ctx.part_tilde.lambda2.size());
  inside << ctx.part.lambda1, lt1;
  outside << l2, ctx.part_tilde.lambda2;
  require_enclosure(spec, inside, outside, tol);

  ResidueG g;
  g.formula.resize(l2.size(), lt1.size());
  for (Eigen::Index i = 0; i < l2.size(); ++i) {
    for (Eigen::Index j = 0; j < lt1.size(); ++j) {
      // Only the pole at lt_j lies inside the contour.
      const cd d = lt1(j) - l2(i);
      if (d == cd(0.0, 0.0)) throw Error(ErrorKind::GapViolated, "perturbed eigenvalue coincides with l2");
      g.formula(i, j) = ctx.W(i, j) / d;
    }
  }

  g.quadrature = ComplexMatrix::Zero(l2.size(), lt1.size());
  for (int k = 0; k < spec.nodes; ++k) {
    const cd z = node(spec, k);
    for (Eigen::Index i = 0; i < l2.size(); ++i) {
      for (Eigen::Index j = 0; j < lt1.size(); ++j) {
        g.quadrature(i, j) += (z - spec.center) * ctx.W(i, j) / ((z - l2(i)) * (z - lt1(j)));
      }
    }
  }
  g.quadrature /= static_cast<double>(spec.nodes);
  return g;
}

namespace {

// Selection re-derived from the raw solver output.
std::vector<Eigen::Index> select_raw(const ComplexVector& lambda, const SpectralSelector& sel) {
  const Eigen::Index n = lambda.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const cd x = lambda(a), y = lambda(b);
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  std::vector<Eigen::Index> picked;
  if (const auto* t = std::get_if<TopKMagnitude>(&sel)) {
    picked.assign(order.begin(), order.begin() + std::min<Eigen::Index>(t->k, n));
  } else if (const auto* s = std::get_if<IndexSet>(&sel)) {
    for (Eigen::Index pos : s->indices) picked.push_back(order.at(static_cast<std::size_t>(pos)));
  } else {
    const auto& d = std::get<Disk>(sel);
    for (Eigen::Index k : order) {
      if ((std::abs(lambda(k) - d.center) < d.radius) == d.inside) picked.push_back(k);
    }
  }
  return picked;
}

ComplexMatrix studied_basis(const ComplexMatrix& A, const SpectralSelector& sel) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(A, true);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigen solver failed");
  const std::vector<Eigen::Index> cols = select_raw(es.eigenvalues(), sel);
  if (cols.empty() || static_cast<Eigen::Index>(cols.size()) == A.rows()) {
    throw Error(ErrorKind::EmptySide, "selector picks no proper subset");
  }
  ComplexMatrix X(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) X.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
  return X;
}

}  // namespace

double brute_force_sin_theta(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector) {
  const ComplexMatrix X1 = studied_basis(A, selector);
  const ComplexMatrix Xt1 = studied_basis(A + dA, selector);
  const Eigen::Index n = A.rows(), r = X1.cols();
  if (Xt1.cols() != r) throw Error(ErrorKind::ShapeMismatch, "perturbed selection differs in size");

  Eigen::HouseholderQR<ComplexMatrix> qr(X1);
  ComplexMatrix Qfull = ComplexMatrix::Identity(n, n);
  Qfull.applyOnTheLeft(qr.householderQ());
  Eigen::HouseholderQR<ComplexMatrix> qrt(Xt1);
  ComplexMatrix Qt = ComplexMatrix::Identity(n, r);
  Qt.applyOnTheLeft(qrt.householderQ());

  const ComplexMatrix C = Qfull.rightCols(n - r).adjoint() * Qt;
  Eigen::JacobiSVD<ComplexMatrix> js(C);
  return js.singularValues()(0);
}

}  // namespace splab
