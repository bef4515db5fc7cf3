#include "splab/bounds.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "splab/error.hpp"
#include "splab/subspace.hpp"

namespace splab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_square_pair(const ComplexMatrix& A, const ComplexMatrix& dA) {
  require_valid(A, "A");
  require_valid(dA, "perturbation");
  if (A.rows() != A.cols()) throw Error(ErrorKind::ShapeMismatch, "A must be square");
  if (dA.rows() != A.rows() || dA.cols() != A.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "perturbation shape differs from A");
  }
}

double min_distance(cd z, const ComplexVector& set) {
  double best = kInf;
  for (Eigen::Index k = 0; k < set.size(); ++k) best = std::min(best, std::abs(z - set(k)));
  return best;
}

}  // namespace

NewBound new_bound(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralPartition& part,
                   const SpectralPartition& part_tilde) {
  require_square_pair(A, dA);
  if (part.r != part_tilde.r) throw Error(ErrorKind::ShapeMismatch, "partitions differ in r");

  const double dl_gap = gap_delta_lambda(part_tilde.lambda1, part.lambda2);
  const double dA_spec = spectral_norm(dA);
  const double a = spectral_norm(A) + dA_spec + spectral_radius(part.lambda2);
  const double pre = cond2(part.V2) * frobenius_norm(dA) / a;

  NewBound b;
  double prod = 1.0;
  for (Eigen::Index j = 0; j < part_tilde.r; ++j) {
    prod *= 1.0 + a / min_distance(part_tilde.lambda1(j), part.lambda2);
  }
  b.perj = pre * prod;
  b.dl = pre * std::pow(1.0 + a / dl_gap, static_cast<double>(part.r));
  return b;
}

ClassicalBound classical_bound(double kappa_X1, double kappa_V2, double dA_spec, double delta0) {
  const double N = 2.0 * kappa_X1 * kappa_V2 * dA_spec;
  if (delta0 > N) return {N / (delta0 - N), true};
  return {kInf, false};
}

ClassicalBound classical_bound(const SpectralPartition& part, double dA_spec, double delta0) {
  return classical_bound(cond2(part.X1), cond2(part.V2), dA_spec, delta0);
}

double sep_frobenius(const ComplexMatrix& L1, const ComplexMatrix& L2, const Tolerances& tol) {
  require_valid(L1, "L1");
  require_valid(L2, "L2");
  if (L1.rows() != L1.cols() || L2.rows() != L2.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "sep needs square blocks");
  }
  const Eigen::Index r = L1.rows(), m = L2.rows();
  if (static_cast<double>(r) * static_cast<double>(m) > tol.size_cap) {
    throw Error(ErrorKind::SizeCap, "r (n - r) = " + std::to_string(r * m) + " exceeds size_cap");
  }
  // vec(T L1 - L2 T) = (L1^T (x) I_m - I_r (x) L2) vec(T) for T of shape m x r.
  const ComplexMatrix K = kron(L1.transpose(), ComplexMatrix::Identity(m, m)) -
                          kron(ComplexMatrix::Identity(r, r), L2);
  const RealVector s = singular_values(K);
  return s(s.size() - 1);
}

double sep_lower_bound(double delta0, double kappa_RX1, double kappa_RV2) {
  return delta0 / (kappa_RX1 * kappa_RV2);
}

bool stewart_condition(double dA_spec, double A_spec, double sep_value) {
  const double slack = std::max(sep_value - 2.0 * dA_spec, 0.0);
  return dA_spec * (A_spec + dA_spec) < 0.25 * slack * slack;
}

std::string format_strategy(const MatchStrategy& s) {
  if (const auto* same = std::get_if<SameSelector>(&s)) return "same:" + format_selector(same->selector);
  return "nearest";
}

BoundReport full_report(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector,
                        const MatchStrategy& strategy, const Tolerances& tol) {
  require_square_pair(A, dA);
  const ComplexMatrix At = A + dA;

  auto pending = std::async(std::launch::async, [&] { return eig(At, tol); });
  const EigenDecomposition ed = eig(A, tol);
  const EigenDecomposition edt = pending.get();

  const SpectralPartition part = partition(ed, selector, tol);
  const SpectralPartition pt = match_split(edt, part, strategy, tol);

  BoundReport rep;
  rep.n = part.n();
  rep.r = part.r;
  rep.selector = format_selector(selector);
  rep.strategy = format_strategy(strategy);
  rep.idx1 = part.idx1;
  rep.idx1_tilde = pt.idx1;
  rep.assignment = pt.assignment;
  rep.lambda1 = part.lambda1;
  rep.lambda2 = part.lambda2;
  rep.lambda1_tilde = pt.lambda1;

  rep.gap.delta1 = gap_delta1(part.lambda1, part.lambda2);
  const Delta0Result d0 = gap_delta0(part.lambda1, part.lambda2);
  rep.gap.delta0 = d0.value;
  rep.gap.t0_star = d0.t0;
  rep.gap.delta_lambda = gap_delta1(pt.lambda1, part.lambda2);
  rep.gap_ok = rep.gap.delta_lambda > 0.0;

  const double A_spec = spectral_norm(A);
  rep.dA_spec = spectral_norm(dA);
  rep.dA_frob = frobenius_norm(dA);
  rep.a = A_spec + rep.dA_spec + spectral_radius(part.lambda2);
  rep.kappa_X1 = cond2(part.X1);
  rep.kappa_V2 = cond2(part.V2);

  const ClassicalBound cb = classical_bound(rep.kappa_X1, rep.kappa_V2, rep.dA_spec, rep.gap.delta0);
  rep.classical_value = cb.value;
  rep.classical_valid = cb.valid;

  if (rep.gap_ok) {
    const NewBound nb = new_bound(A, dA, part, pt);
    rep.new_value_perj = nb.perj;
    rep.new_value_dl = nb.dl;
  } else {
    rep.new_value_perj = rep.new_value_dl = kInf;
  }

  // Unitary [Q_X1, Q_V2] block-triangularizes A; sep acts on its diagonal blocks.
  try {
    const ComplexMatrix& Qx = part.qr_X1.Q;
    const ComplexMatrix& Qv = part.qr_V2.Q;
    rep.sep_frob = sep_frobenius(Qx.adjoint() * A * Qx, Qv.adjoint() * A * Qv, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCap) throw;
    rep.sep_frob = std::numeric_limits<double>::quiet_NaN();
  }
  rep.sep_lower = sep_lower_bound(rep.gap.delta0, rep.kappa_X1, rep.kappa_V2);
  rep.stewart_condition_ok = std::isfinite(rep.sep_frob) && stewart_condition(rep.dA_spec, A_spec, rep.sep_frob);

  const SinThetaCheck sc = sin_theta_norm(part.qr_X1.Q, pt.qr_X1.Q, tol);
  rep.measured_sin = sc.value;
  rep.sin_sqrt_form = sc.sqrt_form;
  rep.measured_tan = tan_theta_norm(part.qr_X1.Q, pt.qr_X1.Q, tol);

  const RealVector sx = singular_values(ed.X);
  const RealVector sx1 = singular_values(part.X1);
  rep.varah_unscaled = rep.dA_spec / (sx(sx.size() - 1) * sx1(sx1.size() - 1));

  rep.dominance_ok = !rep.gap_ok || rep.measured_sin <= rep.new_value_perj;
  rep.classical_dominance_ok = !rep.classical_valid || rep.measured_tan <= rep.classical_value;
  return rep;
}

BoundReport full_report(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector,
                        const Tolerances& tol) {
  return full_report(A, dA, selector, SameSelector{selector}, tol);
}

}  // namespace splab
