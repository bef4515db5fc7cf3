#include "splab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "splab/error.hpp"
#include "splab/experiments.hpp"
#include "splab/oracles.hpp"
#include "splab/rng.hpp"

namespace splab {

namespace {

RandomCaseOptions lemma_options() {
  RandomCaseOptions o;
  o.kappa_max = 1e2;
  o.min_sep = 0.1;
  o.max_factor_cond = 1e8;
  return o;
}

void lemma32_case(SuiteCase& c, const Tolerances& tol) {
  const RandomCase rc = gen_random_case(c.seed, lemma_options(), tol);
  const Residual res = lemma32_residual(make_oracle_context(rc.A, rc.dA, rc.part, rc.part_tilde));
  c.residual = res.residual;
  c.threshold = res.threshold;
  c.pass = res.pass();
}

void lemma33_case(SuiteCase& c, const Tolerances& tol) {
  const RandomCase rc = gen_random_case(c.seed, lemma_options(), tol);
  const OracleContext ctx = make_oracle_context(rc.A, rc.dA, rc.part, rc.part_tilde);
  c.threshold = 1e-8;
  for (Eigen::Index i = 0; i < rc.part.n() - rc.part.r; ++i) {
    if (row_sigma_r(ctx, i) < 1e-280) {
      c.skipped = c.pass = true;
      return;
    }
  }
  const ComplexMatrix rows = assemble_M_rows(ctx);
  const double scale = spectral_norm(ctx.M);
  const double diff = spectral_norm(rows - ctx.M);
  c.residual = scale > 0.0 ? diff / scale : diff;

  // Row-wise inequality from the bound's proof.
  double worst = 0.0;
  for (const RowChain& rc_row : bound_chain(ctx)) {
    if (rc_row.bound > 0.0) worst = std::max(worst, rc_row.m_norm / rc_row.bound);
  }
  c.extras.emplace_back("chain_ratio_max", worst);
  c.pass = c.residual <= c.threshold && worst <= 1.0 + 1e-12;
}

void contour_case(SuiteCase& c, const Tolerances& tol) {
  RandomCaseOptions o;
  o.kappa_max = 1e2;
  o.disk_split = true;
  const RandomCase rc = gen_random_case(c.seed, o, tol);
  const ComplexMatrix P_ref = rc.part.X1 * rc.part.V1.adjoint();
  const double pscale = std::max(1.0, spectral_norm(P_ref));

  double err[3];
  const int nodes[3] = {64, 128, 256};
  for (int k = 0; k < 3; ++k) {
    err[k] = spectral_norm(contour_projector(rc.A, rc.part, {rc.disk_center, 0.5, nodes[k]}, Side::Studied, tol) - P_ref);
  }
  const OracleContext ctx = make_oracle_context(rc.A, rc.dA, rc.part, rc.part_tilde);
  const ResidueG g = residue_G(ctx, {rc.disk_center, 0.5, 256}, tol);
  const double gdiff = spectral_norm(g.quadrature - g.formula) / std::max(1.0, spectral_norm(g.formula));
  const double hadamard = spectral_norm(g.formula - ctx.F.cwiseProduct(ctx.W)) /
                          std::max(1e-300, spectral_norm(g.formula));

  c.residual = std::max(err[2] / pscale, gdiff);
  c.threshold = 1e-8;
  c.extras.emplace_back("projector_error_256", err[2]);
  c.extras.emplace_back("ratio_64_128", err[0] / err[1]);
  c.extras.emplace_back("ratio_128_256", err[1] / err[2]);
  c.extras.emplace_back("residue_quadrature_diff", gdiff);
  c.extras.emplace_back("residue_hadamard_diff", hadamard);
  c.pass = c.residual <= c.threshold && hadamard <= 1e-12;
}

void dominance_case(SuiteCase& c, const Tolerances& tol) {
  const RandomCase rc = gen_random_case(c.seed, {}, tol);
  const BoundReport rep = full_report(rc.A, rc.dA, rc.selector, NearestAssignment{}, tol);
  c.residual = rep.measured_sin / rep.new_value_perj;
  c.threshold = 1.0;
  c.extras.emplace_back("measured_sin", rep.measured_sin);
  c.extras.emplace_back("new_perj", rep.new_value_perj);
  c.extras.emplace_back("new_dl", rep.new_value_dl);
  c.extras.emplace_back("kappa_X", rc.ed.kappa_X);
  c.pass = rep.gap_ok && rep.measured_sin <= rep.new_value_perj && rep.new_value_perj <= rep.new_value_dl &&
           rep.classical_dominance_ok;
}

double rel(double x, double ref) { return ref == 0.0 ? std::abs(x) : std::abs(x - ref) / std::abs(ref); }

void scaling_case(SuiteCase& c, const Tolerances& tol) {
  RandomCaseOptions o;
  o.kappa_max = 1e2;
  o.perturb_scale = 0.05;
  const RandomCase rc = gen_random_case(c.seed, o, tol);
  const BoundReport base = full_report(rc.A, rc.dA, rc.selector, NearestAssignment{}, tol);
  double worst = 0.0;
  for (double t : {1e-3, 1e3}) {
    const BoundReport s = full_report(t * rc.A, t * rc.dA, rc.selector, NearestAssignment{}, tol);
    worst = std::max({worst, rel(s.new_value_perj, base.new_value_perj), rel(s.new_value_dl, base.new_value_dl),
                      rel(s.measured_sin, base.measured_sin)});
  }
  c.residual = worst;
  c.threshold = 1e-10;
  c.extras.emplace_back("measured_sin", base.measured_sin);
  c.pass = worst <= c.threshold;
}

using CaseFn = std::function<void(SuiteCase&, const Tolerances&)>;

CaseFn suite_fn(std::string_view name) {
  if (name == "lemma32") return lemma32_case;
  if (name == "lemma33") return lemma33_case;
  if (name == "contour") return contour_case;
  if (name == "dominance") return dominance_case;
  if (name == "scaling") return scaling_case;
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma32", "lemma33", "contour", "dominance", "scaling"};
  return names;
}

std::size_t default_case_count(std::string_view suite) {
  if (suite == "dominance") return 300;
  if (suite == "scaling") return 50;
  return 100;
}

std::vector<SuiteCase> run_suite(std::string_view suite, const SuiteOptions& opt) {
  const CaseFn fn = suite_fn(suite);
  const std::size_t count = opt.cases > 0 ? opt.cases : default_case_count(suite);
  std::vector<SuiteCase> out(count);
  parallel_for(count, opt.jobs, [&](std::size_t i) {
    SuiteCase& c = out[i];
    c.case_id = i;
    c.seed = derive_seed(opt.seed, i);
    try {
      fn(c, opt.tol);
    } catch (const std::exception& e) {
      c.pass = false;
      c.error = e.what();
    }
  });
  return out;
}

bool all_pass(const std::vector<SuiteCase>& cases) {
  return std::all_of(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.pass; });
}

}  // namespace splab
