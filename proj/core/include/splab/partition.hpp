#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splab/matrix.hpp"

namespace splab {

// ---------------------------------------------------------------------------
// Selectors
// ---------------------------------------------------------------------------

/// The k eigenvalues of largest magnitude (in eig's global ordering).
struct TopKMagnitude {
  Eigen::Index k = 1;
};

/// Explicit positions in eig's global ordering.
struct IndexSet {
  std::vector<Eigen::Index> indices;
};

/// Eigenvalues inside (or outside) the closed disk |z - center| <= radius.
struct Disk {
  cd center{0.0, 0.0};
  double radius = 1.0;
  bool inside = true;
};

using SpectralSelector = std::variant<TopKMagnitude, IndexSet, Disk>;

/// Parses "topk:2", "indices:0,1,4", "disk:1.0+0.0i:0.3:inside" (or ":outside").
SpectralSelector parse_selector(std::string_view text);
std::string format_selector(const SpectralSelector& sel);

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// Block split A [X1, X2] = [X1, X2] diag(Lambda1, Lambda2) together with the
/// matching blocks of V = (X^{-1})^* and the QR factors of X1 and V2.
struct SpectralPartition {
  Eigen::Index r = 0;
  std::vector<Eigen::Index> idx1, idx2;  // positions in the parent decomposition
  ComplexVector lambda1, lambda2;
  ComplexMatrix X1, X2, V1, V2;
  QRFactors qr_X1, qr_V2;
  /// For partitions built by NearestAssignment: assignment[i] is the index in
  /// the base decomposition paired with eigenvalue i of this one.
  std::vector<Eigen::Index> assignment;

  Eigen::Index n() const { return r + lambda2.size(); }
};

SpectralPartition partition(const EigenDecomposition& ed, const SpectralSelector& sel,
                            const Tolerances& tol = default_tolerances());

/// Strategy for splitting the perturbed spectrum.
struct SameSelector {
  SpectralSelector selector;
};
/// Minimum-total-distance one-to-one assignment of perturbed to unperturbed
/// eigenvalues; each perturbed eigenvalue inherits its partner's side.
struct NearestAssignment {};
using MatchStrategy = std::variant<SameSelector, NearestAssignment>;

SpectralPartition match_partition(const EigenDecomposition& ed_tilde, const SpectralPartition& base,
                                  const MatchStrategy& strategy,
                                  const Tolerances& tol = default_tolerances());

/// match_partition without the final gap check; callers that report a
/// vanishing gap as a flag rather than an error use this.
SpectralPartition match_split(const EigenDecomposition& ed_tilde, const SpectralPartition& base,
                              const MatchStrategy& strategy, const Tolerances& tol = default_tolerances());

/// Builds a partition from explicit index lists (idx1 must be nonempty and proper).
SpectralPartition partition_from_indices(const EigenDecomposition& ed, std::vector<Eigen::Index> idx1,
                                         const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Gaps
// ---------------------------------------------------------------------------

struct GapReport {
  double delta0 = 0.0;
  double delta1 = 0.0;
  double delta_lambda = 0.0;
  cd t0_star{0.0, 0.0};
};

/// min |l1 - l2| over the two sets.
double gap_delta1(const ComplexVector& lambda1, const ComplexVector& lambda2);

struct Delta0Result {
  double value = 0.0;
  cd t0{0.0, 0.0};
};

/// Best disk-separation margin
///   max_t max{ min_{S1}|l-t| - max_{S2}|m-t|, min_{S2}|l-t| - max_{S1}|m-t| },
/// clamped at zero. Coarse grid over the inflated bounding box followed by
/// Nelder-Mead refinement; the result is the best value found.
Delta0Result gap_delta0(const ComplexVector& lambda1, const ComplexVector& lambda2);

/// The objective maximized by gap_delta0, exposed for oracles.
double delta0_objective(const ComplexVector& lambda1, const ComplexVector& lambda2, cd t0);

/// Post-perturbation gap between the perturbed studied set and the
/// unperturbed complement. Throws GapViolated when it is zero.
double gap_delta_lambda(const ComplexVector& lambda1_tilde, const ComplexVector& lambda2);

// ---------------------------------------------------------------------------
// Assignment
// ---------------------------------------------------------------------------

/// Minimum-cost perfect matching on a square cost matrix. Entries equal to
/// +inf are forbidden. Returns assignment[row] = column; throws
/// InvalidArgument when no finite matching exists.
std::vector<Eigen::Index> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace splab
