// One line per acceptance criterion: "PASS <n>. <criterion>" or
// "FAIL <n>. <criterion> (<detail>)". Exit status is nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "splab/bounds.hpp"
#include "splab/experiments.hpp"
#include "splab/oracles.hpp"
#include "splab/suites.hpp"
#include "support/oracles.hpp"

using namespace splab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* text, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("threw: ") + e.what();
  }
  if (o.pass) {
    std::printf("PASS %d. %s\n", id, text);
  } else {
    ++failures;
    std::printf("FAIL %d. %s (%s)\n", id, text, o.detail.c_str());
  }
  std::fflush(stdout);
}

const std::vector<double> kTableGrid{1e-2, 1e-4, 1e-6, 1e-8, 1e-10};

Outcome suite_all_pass(const char* name, std::size_t cases) {
  SuiteOptions opt;
  opt.cases = cases;
  opt.seed = 42;
  opt.jobs = 4;
  const auto res = run_suite(name, opt);
  Outcome o;
  o.require(res.size() == cases, std::string(name) + " ran " + std::to_string(res.size()) + " cases");
  std::size_t bad = 0;
  for (const SuiteCase& c : res) bad += (!c.pass && !c.skipped) ? 1 : 0;
  o.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " failures");
  return o;
}

double projector_error(const ComplexMatrix& A, const SpectralPartition& p, ContourSpec spec, int nodes) {
  spec.nodes = nodes;
  return oracle::spectral(contour_projector(A, p, spec) - p.X1 * p.V1.adjoint());
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "Reference table classical bound reproduced; eps = 1e-8 entry flagged", [] {
    Outcome o;
    const Table1Result t = run_table1_sweep(kTableGrid, 1e-6, 42, 4);
    for (const Table1Check& c : t.checks) {
      const double rel = std::abs(c.computed - c.printed) / c.printed;
      if (c.eps == 1e-8) {
        o.require(c.suspect && !c.agrees, "eps=1e-8 not flagged");
        o.require(std::abs(c.computed - 4.2e-2) <= 0.02 * 4.2e-2, "eps=1e-8 computed " + num(c.computed));
      } else {
        o.require(rel <= 0.02, "eps=" + num(c.eps) + " computed " + num(c.computed) + " vs " + num(c.printed));
      }
    }
    const bool noted = std::any_of(t.sweep.notes.begin(), t.sweep.notes.end(),
                                   [](const std::string& n) { return n.find("1e-08") != std::string::npos; });
    o.require(noted, "no note for eps=1e-8");
    return o;
  });

  criterion(2, "Reference table measured sin theta in [1e-7, 1e-5], max/min <= 10", [] {
    Outcome o;
    const Table1Result t = run_table1_sweep(kTableGrid, 1e-6, 42, 4);
    double lo = 1e300, hi = 0;
    for (const SweepRow& r : t.sweep.rows) {
      o.require(r.measured_sin >= 1e-7 && r.measured_sin <= 1e-5, "eps=" + num(r.param) + " measured " + num(r.measured_sin));
      lo = std::min(lo, r.measured_sin);
      hi = std::max(hi, r.measured_sin);
    }
    o.require(hi / lo <= 10, "ratio " + num(hi / lo));
    return o;
  });

  criterion(3, "Dominance on 300 seeded random cases", [] { return suite_all_pass("dominance", 300); });

  criterion(4, "Hadamard identity and row formula suites, 100 cases each", [] {
    Outcome o = suite_all_pass("lemma32", 100);
    const Outcome rows = suite_all_pass("lemma33", 100);
    o.require(rows.pass, rows.detail);
    return o;
  });

  criterion(5, "Tightness ratios within [1/3, 3] for r = 2, 3", [] {
    Outcome o;
    for (int r : {2, 3}) {
      const TightnessResult t = run_tightness_sweep(r, {0.2, 0.1, 0.05}, 0.01, 4);
      for (double q : t.ratios) o.require(q >= 1.0 / 3 && q <= 3.0, "r=" + std::to_string(r) + " ratio " + num(q));
    }
    return o;
  });

  criterion(6, "kappa2(V2) necessity at (0.05, 0.005, 1e-6)", [] {
    Outcome o;
    const V2Record v = run_v2_necessity(0.05, 0.005, 1e-6);
    o.require(v.measured <= v.new_perj, "measured " + num(v.measured) + " > bound " + num(v.new_perj));
    o.require(v.measured > v.new_perj / v.kappa_V2, "measured " + num(v.measured) + " <= reduced " + num(v.reduced));
    return o;
  });

  criterion(7, "Special perturbations of example11", [] {
    Outcome o;
    for (const SpecialRow& r : run_special_perturbation_suite(1e-4, 1e-6)) {
      const bool listed = r.i != 3 || r.j == 3;
      const double limit = listed ? 1e-10 : 1e-5;
      o.require(r.measured <= limit, "(" + std::to_string(r.i) + "," + std::to_string(r.j) + ") " + num(r.measured));
    }
    return o;
  });

  criterion(8, "Contour projector accuracy, convergence and residue identity", [] {
    Outcome o;
    {
      const ComplexMatrix A = gen_example(Example11{1e-2}).A;
      const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
      const double e = projector_error(A, p, ContourSpec{cd(1, 0), 0.3}, 256);
      o.require(e <= 1e-8, "example11 error at 256 nodes " + num(e));
    }
    {
      // Contraction is measured where the quadrature error sits above roundoff.
      const ComplexMatrix A = gen_example(Example11{0.0729}).A;
      const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
      const ContourSpec spec{cd(1, 0), 0.4};
      const double e64 = projector_error(A, p, spec, 64), e128 = projector_error(A, p, spec, 128);
      const double e256 = projector_error(A, p, spec, 256);
      constexpr double kFloor = 1e-12;
      o.require(e64 / e128 >= 10, "64->128 contraction " + num(e64 / e128));
      o.require(e128 <= kFloor || e128 / e256 >= 10, "128->256 contraction " + num(e128 / e256));
    }
    {
      const ComplexMatrix A = gen_example(Example11{1e-2}).A;
      const ComplexMatrix dA = gen_unit_perturbation(3, 3, 1, 1e-6);
      const SpectralPartition p = partition(eig(A), TopKMagnitude{2});
      const SpectralPartition pt = match_partition(eig(A + dA), p, NearestAssignment{});
      const OracleContext ctx = make_oracle_context(A, dA, p, pt);
      const ResidueG g = residue_G(ctx, ContourSpec{cd(1, 0), 0.3, 256});
      const double had = (g.formula - ctx.F.cwiseProduct(ctx.W)).norm();
      o.require(had <= 1e-12, "residue vs Hadamard " + num(had));
    }
    const Outcome suite = suite_all_pass("contour", 100);
    o.require(suite.pass, suite.detail);
    SuiteOptions opt;
    opt.cases = 100;
    opt.jobs = 4;
    for (const SuiteCase& c : run_suite("contour", opt)) {
      for (const auto& [key, value] : c.extras) {
        if (key == "residue_hadamard_diff") o.require(value <= 1e-12, "case " + std::to_string(c.case_id) + " residue vs Hadamard " + num(value));
      }
    }
    return o;
  });

  criterion(9, "Scale invariance of the new bound and measured sin theta", [] {
    Outcome o;
    const ComplexMatrix A = gen_example(Example11{1e-4}).A;
    const ComplexMatrix dA = gen_gaussian_perturbation(3, 1e-4, 42);
    const BoundReport base = full_report(A, dA, TopKMagnitude{2});
    for (double t : {1e-3, 1e3}) {
      const BoundReport s = full_report(t * A, t * dA, TopKMagnitude{2});
      auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
      o.require(rel(s.new_value_perj, base.new_value_perj) <= 1e-10, "per-j at t=" + num(t));
      o.require(rel(s.new_value_dl, base.new_value_dl) <= 1e-10, "dl at t=" + num(t));
      o.require(rel(s.measured_sin, base.measured_sin) <= 1e-10, "measured at t=" + num(t));
    }
    const Outcome suite = suite_all_pass("scaling", 50);
    o.require(suite.pass, suite.detail);
    return o;
  });

  criterion(10, "sep on diagonal pairs equals delta1; unit-kappa classical bound is Davis-Kahan", [] {
    Outcome o;
    std::mt19937_64 g(42);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index r = 1 + k % 4, m = 1 + (k / 4) % 6;
      ComplexVector a(r), b(m);
      for (Eigen::Index i = 0; i < r; ++i) a(i) = cd(nd(g), nd(g));
      for (Eigen::Index i = 0; i < m; ++i) b(i) = cd(nd(g), nd(g));
      const double s = sep_frobenius(a.asDiagonal(), b.asDiagonal());
      const double d = oracle::delta1(a, b);
      o.require(std::abs(s - d) <= 1e-12, "spectrum " + std::to_string(k) + ": " + num(s) + " vs " + num(d));
    }
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 50; ++k) {
      const double dA = 1e-2 * u(g), d0 = u(g) + 0.05;
      const ClassicalBound c = classical_bound(1.0, 1.0, dA, d0);
      o.require(c.valid && c.value == 2 * dA / (d0 - 2 * dA), "Davis-Kahan mismatch at case " + std::to_string(k));
    }
    return o;
  });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria failed; %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
