#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "splab/bounds.hpp"

namespace splab {

// ---------------------------------------------------------------------------
// Example families
// ---------------------------------------------------------------------------

/// [[1, 1, 0], [eps, 1, 0], [0, 0, 1/2]]; eps in (0, 1), eps != 1/4.
struct Example11 {
  double eps = 1e-4;
};
/// [[1, 0, 0], [1, 1 - delta, 0], [0, 0, 1 - 2 delta]] with eps at (3, 2).
struct TightR2 {
  double delta = 0.1;
  double eps = 1e-4;
};
/// I - (lower bidiagonal with diagonal k delta and subdiagonal -1, last
/// row decoupled), size r + 1, with eps at (r + 1, r).
struct TightGeneral {
  int r = 2;
  double delta = 0.1;
  double eps = 1e-4;
};
/// [[1 + delta, 0, 0], [0, 1, 0], [0, 1/2, 1 - delta1]] with eps at (2, 1).
struct V2Necessity3 {
  double delta = 0.05;
  double delta1 = 0.005;
  double eps = 1e-6;
};
/// V2Necessity3 padded with (1 - 2 delta1) I_{n-3}.
struct V2NecessityN {
  int n = 8;
  double delta = 0.05;
  double delta1 = 0.005;
  double eps = 1e-6;
};

using ExampleSpec = std::variant<Example11, TightR2, TightGeneral, V2Necessity3, V2NecessityN>;

/// Matrix, canonical perturbation and closed-form facts of one example.
struct GeneratedExample {
  ComplexMatrix A;
  ComplexMatrix dA;  // zero for Example11, which is perturbed by the caller
  SpectralSelector selector;
  ComplexVector lambda1, lambda2;
  ComplexMatrix X1;       // closed-form basis of the studied subspace
  ComplexMatrix Xt1;      // closed-form perturbed basis, empty when not known
  ComplexVector witness;  // vector of the perturbed subspace, empty when not known
  double kappa_X1 = std::numeric_limits<double>::quiet_NaN();
  double leading_sin = std::numeric_limits<double>::quiet_NaN();
  double delta_lambda = std::numeric_limits<double>::quiet_NaN();
};

/// Throws SpecViolation naming the failed parameter guard.
GeneratedExample gen_example(const ExampleSpec& spec);

std::string example_name(const ExampleSpec& spec);

/// eps1 at the 1-based position (i, j).
ComplexMatrix gen_unit_perturbation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double eps1);

/// Real i.i.d. standard normal entries drawn row-major from Rng(seed),
/// rescaled so the spectral norm equals target.
ComplexMatrix gen_gaussian_perturbation(Eigen::Index n, double target_spectral_norm, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
  double param = 0.0;
  double measured_sin = 0.0;
  double classical = 0.0;
  double new_perj = 0.0;
  double new_dl = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;
  double delta_lambda = 0.0;
  double kappa_X1 = 0.0;
  double kappa_V2 = 0.0;
  std::uint64_t seed = 0;
};

SweepRow sweep_row(double param, const BoundReport& rep, std::uint64_t seed);

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Human-readable findings (reference mismatches, slopes); not part of the CSV.
  std::vector<std::string> notes;
};

struct SpecialRow {
  int i = 0, j = 0;  // 1-based
  double measured = 0.0;
  double brute_force = 0.0;
  double limit = 0.0;
  bool zero_effect = false;
  bool pass = false;
};

/// All nine unit perturbations of Example11(eps) at size eps1.
std::vector<SpecialRow> run_special_perturbation_suite(double eps, double eps1);

/// Classical-bound values printed in the published table, for comparison.
struct Table1Reference {
  double eps;
  double printed;
  bool suspect;  // printed value disagrees with direct evaluation
};
const std::vector<Table1Reference>& table1_reference();

struct Table1Check {
  double eps = 0.0;
  double printed = 0.0;
  double computed = 0.0;
  double rel_diff = 0.0;
  bool suspect = false;
  bool agrees = false;  // within 2 %
};

struct Table1Result {
  SweepResult sweep;
  std::vector<Table1Check> checks;
};

/// One shared Gaussian perturbation (seed, dA_norm) across all eps.
Table1Result run_table1_sweep(const std::vector<double>& eps_list, double dA_norm, std::uint64_t seed,
                              unsigned jobs = 1, const Tolerances& tol = default_tolerances());

struct TightnessResult {
  SweepResult sweep;
  std::vector<double> ratios;  // measured / (eps / (r! delta^r))
  double slope = 0.0;          // least-squares d log(measured / eps) / d log(delta)
};

/// eps = c delta^r for every delta.
TightnessResult run_tightness_sweep(int r, const std::vector<double>& deltas, double c = 0.01, unsigned jobs = 1,
                                    const Tolerances& tol = default_tolerances());

struct V2Record {
  double measured = 0.0;
  double new_perj = 0.0;
  double new_dl = 0.0;
  double kappa_V2 = 0.0;
  double reduced = 0.0;  // new_perj / kappa_V2
  double leading = 0.0;  // eps / (2 delta (delta + delta1))
  bool dominated = false;
  bool exceeds_reduced = false;
  bool exceedance_required = false;  // delta1 <= delta / 10
  bool pass() const { return dominated && (!exceedance_required || exceeds_reduced); }
};

/// n = 3 uses V2Necessity3, larger n the padded family.
V2Record run_v2_necessity(double delta, double delta1, double eps, int n = 3,
                          const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Random diagonalizable cases
// ---------------------------------------------------------------------------

struct RandomCaseOptions {
  int n_min = 3, n_max = 10;
  int r_max = 4;
  double kappa_max = 1e6;     // bound on kappa2(X)
  double min_sep = 0.0;       // minimum pairwise eigenvalue distance
  double perturb_scale = 0.01;  // ||dA|| starts at perturb_scale delta1 / kappa2(X)
  double gap_ratio = 10.0;      // accept once delta_lambda >= gap_ratio ||dA||
  bool disk_split = false;      // studied set inside |z - c| < 0.3, rest beyond 0.8
  double max_factor_cond = std::numeric_limits<double>::infinity();  // kappa2(R_V2) kappa2(R_Xt1)
};

struct RandomCase {
  std::uint64_t seed = 0;
  ComplexMatrix A, dA;
  SpectralSelector selector;
  EigenDecomposition ed, ed_tilde;
  SpectralPartition part, part_tilde;
  cd disk_center{0.0, 0.0};  // meaningful for disk_split cases
};

/// Deterministic in seed; rejection sampling draws from the same stream.
RandomCase gen_random_case(std::uint64_t seed, const RandomCaseOptions& opt = {},
                           const Tolerances& tol = default_tolerances());

/// Runs f(i) for i in [0, count) on `jobs` threads. f must write only to slot i.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& f);

}  // namespace splab

#include "splab/detail/parallel.hpp"
