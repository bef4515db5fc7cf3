#pragma once

#include <vector>

#include "splab/partition.hpp"

namespace splab {

/// Everything the exact-identity checks share for one (A, dA) pair.
struct OracleContext {
  SpectralPartition part;        // of A
  SpectralPartition part_tilde;  // of A + dA, matched to part
  ComplexMatrix A, dA, A_tilde;
  ComplexMatrix F;  // (n-r) x r, F(i,j) = 1 / (lt_j - l2_i)
  ComplexMatrix W;  // V2^* dA Xt1
  ComplexMatrix M;  // (F o W) R_Xt1^{-1}
};

OracleContext make_oracle_context(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralPartition& part,
                                  const SpectralPartition& part_tilde);

/// Throws GapViolated when some lt_j equals some l2_i.
ComplexMatrix build_F(const ComplexVector& lambda1_tilde, const ComplexVector& lambda2);

struct Residual {
  double residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return residual <= threshold; }
};

/// || Q_V2^* Q_Xt1 - R_V2^{-*} (F o W) R_Xt1^{-1} || against
/// 1e-8 max(1, ||RHS||) max(1, kappa2(R_V2) kappa2(R_Xt1) / 1e8).
Residual lemma32_residual(const OracleContext& ctx);

/// sigma_1..sigma_r of lhat by incremental expansion of prod (z - lhat_j).
ComplexVector elementary_symmetric(const ComplexVector& lhat);

/// Row i of M from the symmetric-polynomial formula, with the matrix
/// polynomial in Ahat = A_tilde - l2_i I applied to Q_Xt1 by Horner.
/// Returns a 1 x r row.
ComplexMatrix row_formula_m(const OracleContext& ctx, Eigen::Index i);

/// |sigma_r| for row i; rows below 1e-280 are skipped by the verifiers.
double row_sigma_r(const OracleContext& ctx, Eigen::Index i);

/// All rows of M from row_formula_m.
ComplexMatrix assemble_M_rows(const OracleContext& ctx);

/// Per-row ||m_i|| and (||b_i|| / a) prod_j (1 + a / |lhat_j|).
struct RowChain {
  double m_norm = 0.0;
  double bound = 0.0;
};
std::vector<RowChain> bound_chain(const OracleContext& ctx);

struct ContourSpec {
  cd center{0.0, 0.0};
  double radius = 1.0;
  int nodes = 64;
};

/// Checks radius > 0, nodes >= 16, every `inside` eigenvalue within
/// (1 - margin) radius and every `outside` one beyond (1 + margin) radius.
void require_enclosure(const ContourSpec& spec, const ComplexVector& inside, const ComplexVector& outside,
                       const Tolerances& tol = default_tolerances());

enum class Side { Studied, Complement };

/// Trapezoid rule for (1 / 2 pi i) \oint (z I - A)^{-1} dz on the circle,
/// which converges to the oblique projector X1 V1^* (or X2 V2^*).
ComplexMatrix contour_projector(const ComplexMatrix& A, const SpectralPartition& part, const ContourSpec& spec,
                                Side side = Side::Studied, const Tolerances& tol = default_tolerances());

struct ResidueG {
  ComplexMatrix formula;     // entrywise residues at lt_j
  ComplexMatrix quadrature;  // trapezoid on the circle
};

/// G = (1 / 2 pi i) \oint (zI - Lambda2)^{-1} W (zI - Lt1)^{-1} dz two ways.
ResidueG residue_G(const OracleContext& ctx, const ContourSpec& spec, const Tolerances& tol = default_tolerances());

/// Independent end-to-end sine: eigenvectors, selection, Householder bases
/// and ||Q1_perp^* Qt1||, sharing nothing with full_report.
double brute_force_sin_theta(const ComplexMatrix& A, const ComplexMatrix& dA, const SpectralSelector& selector);

}  // namespace splab
