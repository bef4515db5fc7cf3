#pragma once

#include <string>
#include <vector>

#include "splab/partition.hpp"

namespace splab {

struct NewBound {
  double perj = 0.0;  // product over the matched perturbed eigenvalues
  double dl = 0.0;    // every factor replaced by the worst gap delta_lambda
};

/// kappa2(V2) ||dA||_F / a * prod_j (1 + a / min_k |lt_j - l_k|), with
/// a = ||A|| + ||dA|| + rho(Lambda2). Throws GapViolated when delta_lambda = 0.
NewBound new_bound(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralPartition& part,
                   const SpectralPartition& part_tilde);

struct ClassicalBound {
  double value = 0.0;  // +inf when vacuous
  bool valid = true;
};

/// N = 2 kappa2(X1) kappa2(V2) ||dA||; N / (delta0 - N) when delta0 > N.
ClassicalBound classical_bound(double kappa_X1, double kappa_V2, double dA_spec, double delta0);
ClassicalBound classical_bound(const SpectralPartition& part, double dA_spec, double delta0);

/// sigma_min of T -> T L1 - L2 T on vec(T) (Frobenius geometry).
/// Throws SizeCap when r (n - r) exceeds tol.size_cap.
double sep_frobenius(const ComplexMatrix& L1, const ComplexMatrix& L2, const Tolerances& tol = default_tolerances());

/// delta0 / (kappa2(R_X1) kappa2(R_V2)).
double sep_lower_bound(double delta0, double kappa_RX1, double kappa_RV2);

/// ||dA|| (||A|| + ||dA||) < (max(sep - 2||dA||, 0))^2 / 4.
bool stewart_condition(double dA_spec, double A_spec, double sep_value);

struct BoundReport {
  GapReport gap;
  double a = 0.0;
  double kappa_X1 = 0.0;
  double kappa_V2 = 0.0;
  double dA_spec = 0.0;
  double dA_frob = 0.0;
  double classical_value = 0.0;
  bool classical_valid = true;
  double new_value_perj = 0.0;
  double new_value_dl = 0.0;
  double sep_frob = 0.0;  // NaN when the Kronecker operator exceeds size_cap
  double sep_lower = 0.0;
  bool stewart_condition_ok = false;
  double measured_sin = 0.0;
  double measured_tan = 0.0;
  double sin_sqrt_form = 0.0;
  double varah_unscaled = 0.0;  // ||dA|| / (sigma_min(X) sigma_min(X1)), no constant

  bool gap_ok = true;        // delta_lambda > 0
  bool dominance_ok = true;  // measured_sin <= new_value_perj
  bool classical_dominance_ok = true;  // measured_tan <= classical_value when valid

  Eigen::Index n = 0;
  Eigen::Index r = 0;
  std::string selector;
  std::string strategy;
  std::vector<Eigen::Index> idx1, idx1_tilde, assignment;
  ComplexVector lambda1, lambda2, lambda1_tilde;

  /// Any assumption flag that makes the run exit with status 2.
  bool assumptions_failed() const { return !gap_ok || !classical_valid; }
};

/// Runs the whole pipeline on (A, A + dA). A vanishing delta_lambda is
/// reported through gap_ok instead of thrown.
BoundReport full_report(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector,
                        const MatchStrategy& strategy, const Tolerances& tol = default_tolerances());

/// Same, reusing the selector for the perturbed spectrum.
BoundReport full_report(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector,
                        const Tolerances& tol = default_tolerances());

std::string format_strategy(const MatchStrategy& s);

}  // namespace splab
