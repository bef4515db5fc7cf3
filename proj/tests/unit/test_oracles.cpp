#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "splab/error.hpp"
#include "splab/experiments.hpp"
#include "splab/oracles.hpp"
#include "support/oracles.hpp"

using namespace splab;

namespace {

ComplexMatrix example11(double eps) { return gen_example(Example11{eps}).A; }

OracleContext example_context(double eps, int i, int j, double eps1) {
  const ComplexMatrix A = example11(eps);
  const ComplexMatrix dA = gen_unit_perturbation(3, i, j, eps1);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  const SpectralPartition pt = match_partition(eig(A + dA), p, NearestAssignment{});
  return make_oracle_context(A, dA, p, pt);
}

ComplexVector vec(std::initializer_list<cd> v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (cd z : v) out(i++) = z;
  return out;
}

double projector_error(const ComplexMatrix& A, const SpectralPartition& p, ContourSpec spec, int nodes) {
  spec.nodes = nodes;
  return oracle::spectral(contour_projector(A, p, spec) - p.X1 * p.V1.adjoint());
}

}  // namespace

TEST(BuildF, Entries) {
  const ComplexMatrix F = build_F(vec({2}), vec({0}));
  EXPECT_EQ(F(0, 0), cd(0.5));

  const ComplexMatrix G = build_F(vec({3, cd(0, 1)}), vec({1, -1}));
  ComplexMatrix expect(2, 2);
  expect << 1.0 / (3.0 - 1.0), 1.0 / (cd(0, 1) - 1.0), 1.0 / (3.0 + 1.0), 1.0 / (cd(0, 1) + 1.0);
  EXPECT_LE((G - expect).norm(), 1e-16);

  try {
    build_F(vec({1}), vec({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GapViolated);
  }
}

TEST(BuildF, Example11UnitPerturbation) {
  const double eps = 1e-4;
  const OracleContext ctx = example_context(eps, 3, 1, 1e-6);
  ASSERT_EQ(ctx.F.rows(), 1);
  for (int j = 0; j < 2; ++j) {
    const double lt = 1 + (j == 0 ? 1 : -1) * std::sqrt(eps);
    EXPECT_NEAR(std::abs(ctx.F(0, j) - 1.0 / (lt - 0.5)), 0.0, 1e-12);
  }
}

TEST(HadamardIdentity, ZeroPerturbation) {
  const ComplexMatrix A = example11(1e-4);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  const Residual r = lemma32_residual(make_oracle_context(A, ComplexMatrix::Zero(3, 3), p, p));
  EXPECT_LE(r.residual, 1e-14);
}

TEST(HadamardIdentity, Example11UnitPerturbation) {
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const Residual r = lemma32_residual(example_context(1e-4, i, j, 1e-6));
      EXPECT_LE(r.residual, 1e-10) << i << "," << j;
      EXPECT_TRUE(r.pass());
    }
  }
}

TEST(HadamardIdentity, SeededRandomCases) {
  RandomCaseOptions opt;
  opt.kappa_max = 1e2;
  opt.min_sep = 0.1;
  opt.max_factor_cond = 1e8;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomCase c = gen_random_case(seed, opt);
    const Residual r = lemma32_residual(make_oracle_context(c.A, c.dA, c.part, c.part_tilde));
    EXPECT_TRUE(r.pass()) << seed << ": " << r.residual << " > " << r.threshold;
  }
}

TEST(ElementarySymmetric, HandExpansions) {
  EXPECT_EQ(elementary_symmetric(vec({cd(2, 3)})), vec({cd(2, 3)}));
  EXPECT_EQ(elementary_symmetric(vec({1, 2})), vec({3, 2}));
  EXPECT_EQ(elementary_symmetric(vec({1, 2, 3})), vec({6, 11, 6}));
}

TEST(ElementarySymmetric, MatchesPolynomialExpansion) {
  std::mt19937_64 g(41);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index r = 1 + k % 6;
    const ComplexVector x = oracle::random_complex(g, r, 1);
    const ComplexVector c = oracle::poly_from_roots(x);
    const ComplexVector s = elementary_symmetric(x);
    // q(z) = z^r - s1 z^{r-1} + s2 z^{r-2} - ...
    for (Eigen::Index m = 1; m <= r; ++m) {
      const cd expect = (m % 2 ? -1.0 : 1.0) * c(m);
      EXPECT_LE(std::abs(s(m - 1) - expect), 1e-12 * (1 + std::abs(expect)));
    }
  }
}

TEST(RowFormula, RankOneCollapse) {
  // r = 1: m_i^* = v_i^* dA q / lhat.
  ComplexMatrix A = ComplexMatrix::Zero(3, 3);
  A.diagonal() << 3, 1, 0.5;
  A(0, 1) = 0.3;
  A(2, 0) = 0.2;
  const ComplexMatrix dA = gen_gaussian_perturbation(3, 1e-3, 5);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{1});
  const SpectralPartition pt = match_partition(eig(A + dA), p, NearestAssignment{});
  const OracleContext ctx = make_oracle_context(A, dA, p, pt);
  for (Eigen::Index i = 0; i < 2; ++i) {
    const cd lhat = pt.lambda1(0) - p.lambda2(i);
    const cd expect = (p.V2.col(i).adjoint() * dA * pt.qr_X1.Q)(0, 0) / lhat;
    EXPECT_LE(std::abs(row_formula_m(ctx, i)(0, 0) - expect), 1e-14 * std::abs(expect) + 1e-18);
  }
}

TEST(RowFormula, Example11MatchesHadamardForm) {
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const OracleContext ctx = example_context(1e-4, i, j, 1e-6);
      const ComplexMatrix rows = assemble_M_rows(ctx);
      EXPECT_LE((rows - ctx.M).norm(), 1e-10 * std::max(1.0, ctx.M.norm())) << i << "," << j;
    }
  }
}

TEST(RowFormula, SeededRandomCasesAndChain) {
  RandomCaseOptions opt;
  opt.kappa_max = 1e2;
  opt.min_sep = 0.1;
  opt.max_factor_cond = 1e8;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const RandomCase c = gen_random_case(seed, opt);
    const OracleContext ctx = make_oracle_context(c.A, c.dA, c.part, c.part_tilde);
    const ComplexMatrix rows = assemble_M_rows(ctx);
    EXPECT_LE((rows - ctx.M).norm(), 1e-8 * ctx.M.norm()) << seed;
    for (const RowChain& rc : bound_chain(ctx)) EXPECT_LE(rc.m_norm, rc.bound * (1 + 1e-12)) << seed;
  }
}

TEST(Contour, DiagonalRankOne) {
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1;
  const SpectralPartition p = partition(eig(A), TopKMagnitude{1});
  const ComplexMatrix P = contour_projector(A, p, ContourSpec{cd(1, 0), 0.3, 64});
  ComplexMatrix e1e1 = ComplexMatrix::Zero(2, 2);
  e1e1(0, 0) = 1;
  EXPECT_LE(oracle::spectral(P - e1e1), 1e-12);
  const ComplexMatrix Q = contour_projector(A, p, ContourSpec{cd(0, 0), 0.3, 64}, Side::Complement);
  EXPECT_LE(oracle::spectral(P + Q - ComplexMatrix::Identity(2, 2)), 1e-12);
}

TEST(Contour, Example11Projector) {
  const ComplexMatrix A = example11(1e-2);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  EXPECT_LE(projector_error(A, p, ContourSpec{cd(1, 0), 0.3}, 256), 1e-8);
}

TEST(Contour, GeometricConvergence) {
  // Eigenvalues 1.27, 0.73 and 0.5: the quadrature error stays above roundoff at 128 nodes.
  const ComplexMatrix A = example11(0.0729);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  const ContourSpec spec{cd(1, 0), 0.4};
  const double e64 = projector_error(A, p, spec, 64), e128 = projector_error(A, p, spec, 128);
  const double e256 = projector_error(A, p, spec, 256);
  EXPECT_GE(e64 / e128, 10.0);
  EXPECT_TRUE(e128 / e256 >= 10.0 || e256 <= 1e-12) << e128 << " " << e256;
  EXPECT_LE(e256, 1e-8);
}

TEST(Contour, EnclosureViolations) {
  const ComplexMatrix A = example11(1e-2);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  auto kind = [&](ContourSpec s) {
    try {
      contour_projector(A, p, s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind(ContourSpec{cd(1, 0), 0.1, 64}), ErrorKind::EnclosureViolated);
  EXPECT_EQ(kind(ContourSpec{cd(1, 0), 0.49, 64}), ErrorKind::EnclosureViolated);
  EXPECT_EQ(kind(ContourSpec{cd(1, 0), 0.3, 8}), ErrorKind::InvalidArgument);
}

TEST(ResidueG, ZeroAndHadamard) {
  const ComplexMatrix A = example11(1e-2);
  const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
  const ContourSpec spec{cd(1, 0), 0.3, 128};
  const ResidueG z = residue_G(make_oracle_context(A, ComplexMatrix::Zero(3, 3), p, p), spec);
  EXPECT_EQ(z.formula.norm(), 0.0);
  EXPECT_LE(z.quadrature.norm(), 1e-15);

  const OracleContext ctx = example_context(1e-2, 3, 1, 1e-6);
  const ResidueG g = residue_G(ctx, spec);
  EXPECT_LE((g.formula - ctx.F.cwiseProduct(ctx.W)).norm(), 1e-12 * std::max(1.0, g.formula.norm()));
  EXPECT_LE((g.formula - g.quadrature).norm(), 1e-8 * std::max(1.0, g.formula.norm()));
}

TEST(ResidueG, SeededQuadrature) {
  RandomCaseOptions opt;
  opt.disk_split = true;
  opt.kappa_max = 1e2;
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const RandomCase c = gen_random_case(seed, opt);
    const OracleContext ctx = make_oracle_context(c.A, c.dA, c.part, c.part_tilde);
    const ResidueG g = residue_G(ctx, ContourSpec{c.disk_center, 0.5, 256});
    EXPECT_LE((g.formula - g.quadrature).norm(), 1e-8 * std::max(1.0, g.formula.norm())) << seed;
  }
}

TEST(BruteForce, ZeroAndInvariantPerturbations) {
  const ComplexMatrix A = example11(1e-4);
  EXPECT_EQ(brute_force_sin_theta(A, ComplexMatrix::Zero(3, 3), TopKMagnitude{2}), 0.0);
  EXPECT_LE(brute_force_sin_theta(A, gen_unit_perturbation(3, 1, 1, 1e-6), TopKMagnitude{2}), 1e-10);
  const BoundReport rep = full_report(A, gen_gaussian_perturbation(3, 1e-6, 42), TopKMagnitude{2});
  EXPECT_NEAR(brute_force_sin_theta(A, gen_gaussian_perturbation(3, 1e-6, 42), TopKMagnitude{2}), rep.measured_sin,
              1e-12);
}
