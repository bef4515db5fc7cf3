#include "splab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "splab/error.hpp"
#include "splab/matrix_io.hpp"
#include "splab/oracles.hpp"
#include "splab/rng.hpp"

namespace splab {

namespace {

constexpr double kGuard = 0.01;
constexpr double kSlack = 1.0 + 1e-12;  // eps = 0.01 delta^r sits on the guard

void guard(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::SpecViolation, what);
}

ComplexVector vec(std::initializer_list<cd> v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cd z : v) out(k++) = z;
  return out;
}

double factorial(int r) {
  double f = 1.0;
  for (int k = 2; k <= r; ++k) f *= k;
  return f;
}

GeneratedExample example11(const Example11& s) {
  guard(s.eps > 0.0 && s.eps < 1.0, "Example11 needs 0 < eps < 1");
  guard(s.eps != 0.25, "Example11 with eps = 1/4 has a double eigenvalue 1/2");
  GeneratedExample g;
  g.A = ComplexMatrix::Zero(3, 3);
  g.A(0, 0) = 1.0;
  g.A(0, 1) = 1.0;
  g.A(1, 0) = s.eps;
  g.A(1, 1) = 1.0;
  g.A(2, 2) = 0.5;
  g.dA = ComplexMatrix::Zero(3, 3);
  const double se = std::sqrt(s.eps);
  g.lambda1 = vec({1.0 + se, 1.0 - se});
  g.lambda2 = vec({0.5});
  // With eps > 1/4 the eigenvalue 1/2 outranks 1 - sqrt(eps) in magnitude.
  g.selector = s.eps < 0.25 ? SpectralSelector{TopKMagnitude{2}} : SpectralSelector{IndexSet{{0, 2}}};
  g.X1 = ComplexMatrix::Zero(3, 2);
  g.X1(0, 0) = g.X1(0, 1) = 1.0;
  g.X1(1, 0) = se;
  g.X1(1, 1) = -se;
  g.X1 /= std::sqrt(1.0 + s.eps);
  g.kappa_X1 = 1.0 / se;
  g.delta_lambda = std::abs(1.0 - se - 0.5);
  return g;
}

GeneratedExample tight_general(int r, double delta, double eps, const char* name) {
  guard(r >= 1, std::string(name) + " needs r >= 1");
  guard(delta > 0.0 && delta < 1.0, std::string(name) + " needs 0 < delta < 1");
  guard(r * delta < 1.0, std::string(name) + " needs r delta < 1 so the studied eigenvalues lead in magnitude");
  guard(eps > 0.0 && eps <= kGuard * std::pow(delta, r) * kSlack, std::string(name) + " needs 0 < eps <= 0.01 delta^r");
  const Eigen::Index n = r + 1;
  GeneratedExample g;
  g.A = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) g.A(k, k) = 1.0 - static_cast<double>(k) * delta;
  for (Eigen::Index k = 1; k < r; ++k) g.A(k, k - 1) = 1.0;
  g.dA = ComplexMatrix::Zero(n, n);
  g.dA(r, r - 1) = eps;
  g.selector = TopKMagnitude{r};
  g.lambda1 = g.A.diagonal().head(r);
  g.lambda2 = g.A.diagonal().tail(1);
  g.X1 = ComplexMatrix::Identity(n, r);
  g.witness = ComplexVector::Zero(n);
  g.witness(0) = 1.0;
  g.witness(r) = (r % 2 == 1 ? 1.0 : -1.0) * eps / (factorial(r) * std::pow(delta, r));
  g.kappa_X1 = std::numeric_limits<double>::quiet_NaN();
  g.leading_sin = eps / (factorial(r) * std::pow(delta, r));
  g.delta_lambda = delta;
  return g;
}

GeneratedExample v2_necessity(int n, double delta, double delta1, double eps) {
  guard(n >= 3, "V2Necessity needs n >= 3");
  guard(delta > 0.0 && delta <= 0.1, "V2Necessity needs 0 < delta <= 0.1");
  guard(delta1 > 0.0 && delta1 <= 0.1, "V2Necessity needs 0 < delta1 <= 0.1");
  guard(eps > 0.0 && eps <= kGuard * delta * delta * kSlack, "V2Necessity needs 0 < eps <= 0.01 delta^2");
  GeneratedExample g;
  g.A = ComplexMatrix::Zero(n, n);
  g.A(0, 0) = 1.0 + delta;
  g.A(1, 1) = 1.0;
  g.A(2, 1) = 0.5;
  g.A(2, 2) = 1.0 - delta1;
  for (Eigen::Index k = 3; k < n; ++k) g.A(k, k) = 1.0 - 2.0 * delta1;
  g.dA = ComplexMatrix::Zero(n, n);
  g.dA(1, 0) = eps;
  g.selector = TopKMagnitude{1};
  g.lambda1 = vec({1.0 + delta});
  g.lambda2 = g.A.diagonal().tail(n - 1);
  g.X1 = ComplexMatrix::Zero(n, 1);
  g.X1(0, 0) = 1.0;
  g.Xt1 = ComplexMatrix::Zero(n, 1);
  g.Xt1(0, 0) = 1.0;
  g.Xt1(1, 0) = eps / delta;
  g.Xt1(2, 0) = eps / (2.0 * delta * (delta + delta1));
  g.witness = g.Xt1.col(0);
  g.kappa_X1 = 1.0;
  g.leading_sin = eps / (2.0 * delta * (delta + delta1));
  g.delta_lambda = delta;
  return g;
}

}  // namespace

GeneratedExample gen_example(const ExampleSpec& spec) {
  if (const auto* e = std::get_if<Example11>(&spec)) return example11(*e);
  if (const auto* t = std::get_if<TightR2>(&spec)) {
    GeneratedExample g = tight_general(2, t->delta, t->eps, "TightR2");
    g.Xt1 = ComplexMatrix::Zero(3, 2);
    g.Xt1(0, 0) = 1.0;
    g.Xt1(1, 0) = 1.0 / t->delta;
    g.Xt1(2, 0) = t->eps / (2.0 * t->delta * t->delta);
    g.Xt1(1, 1) = 1.0;
    g.Xt1(2, 1) = t->eps / t->delta;
    return g;
  }
  if (const auto* t = std::get_if<TightGeneral>(&spec)) return tight_general(t->r, t->delta, t->eps, "TightGeneral");
  if (const auto* v = std::get_if<V2Necessity3>(&spec)) return v2_necessity(3, v->delta, v->delta1, v->eps);
  const auto& v = std::get<V2NecessityN>(spec);
  return v2_necessity(v.n, v.delta, v.delta1, v.eps);
}

std::string example_name(const ExampleSpec& spec) {
  static const char* names[] = {"example11", "tight_r2", "tight_general", "v2_necessity3", "v2_necessity_n"};
  return names[spec.index()];
}

ComplexMatrix gen_unit_perturbation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double eps1) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "unit perturbation (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." + std::to_string(n));
  }
  if (!(eps1 > 0.0) || !std::isfinite(eps1)) throw Error(ErrorKind::InvalidArgument, "eps1 must be positive");
  ComplexMatrix E = ComplexMatrix::Zero(n, n);
  E(i - 1, j - 1) = eps1;
  return E;
}

ComplexMatrix gen_gaussian_perturbation(Eigen::Index n, double target_spectral_norm, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (!(target_spectral_norm > 0.0) || !std::isfinite(target_spectral_norm)) {
    throw Error(ErrorKind::InvalidArgument, "target norm must be positive");
  }
  Rng rng(seed);
  ComplexMatrix G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = rng.normal();
  }
  return G * (target_spectral_norm / spectral_norm(G));
}

SweepRow sweep_row(double param, const BoundReport& rep, std::uint64_t seed) {
  SweepRow row;
  row.param = param;
  row.measured_sin = rep.measured_sin;
  row.classical = rep.classical_value;
  row.new_perj = rep.new_value_perj;
  row.new_dl = rep.new_value_dl;
  row.delta0 = rep.gap.delta0;
  row.delta1 = rep.gap.delta1;
  row.delta_lambda = rep.gap.delta_lambda;
  row.kappa_X1 = rep.kappa_X1;
  row.kappa_V2 = rep.kappa_V2;
  row.seed = seed;
  return row;
}

std::vector<SpecialRow> run_special_perturbation_suite(double eps, double eps1) {
  const GeneratedExample ex = gen_example(Example11{eps});
  std::vector<SpecialRow> rows;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      SpecialRow row;
      row.i = i;
      row.j = j;
      row.zero_effect = !(i == 3 && j != 3);
      row.limit = row.zero_effect ? 1e-10 : 10.0 * eps1;
      const ComplexMatrix dA = gen_unit_perturbation(3, i, j, eps1);
      row.measured = full_report(ex.A, dA, ex.selector).measured_sin;
      row.brute_force = brute_force_sin_theta(ex.A, dA, ex.selector);
      row.pass = row.measured <= row.limit && row.brute_force <= row.limit;
      rows.push_back(row);
    }
  }
  return rows;
}

const std::vector<Table1Reference>& table1_reference() {
  static const std::vector<Table1Reference> ref = {
      {1e-2, 5.00e-5, false}, {1e-4, 4.08e-4, false}, {1e-6, 4.00e-3, false},
      {1e-8, 4.2e-3, true},   {1e-10, 0.67, false},
  };
  return ref;
}

Table1Result run_table1_sweep(const std::vector<double>& eps_list, double dA_norm, std::uint64_t seed, unsigned jobs,
                              const Tolerances& tol) {
  const ComplexMatrix dA = gen_gaussian_perturbation(3, dA_norm, seed);
  Table1Result out;
  out.sweep.rows.resize(eps_list.size());
  parallel_for(eps_list.size(), jobs, [&](std::size_t k) {
    const GeneratedExample ex = gen_example(Example11{eps_list[k]});
    out.sweep.rows[k] = sweep_row(eps_list[k], full_report(ex.A, dA, ex.selector, tol), seed);
  });

  for (const SweepRow& row : out.sweep.rows) {
    for (const Table1Reference& ref : table1_reference()) {
      if (std::abs(row.param - ref.eps) > 1e-9 * ref.eps) continue;
      Table1Check c;
      c.eps = ref.eps;
      c.printed = ref.printed;
      c.computed = row.classical;
      c.rel_diff = std::abs(row.classical - ref.printed) / ref.printed;
      c.suspect = ref.suspect;
      c.agrees = c.rel_diff <= 0.02;
      out.checks.push_back(c);
      if (!c.agrees) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "eps=%g: printed classical %.3g diverges from computed %.4g (rel diff %.3g)%s",
                      c.eps, c.printed, c.computed, c.rel_diff, c.suspect ? " [printed value suspected typo]" : "");
        out.sweep.notes.emplace_back(buf);
      }
    }
  }
  return out;
}

TightnessResult run_tightness_sweep(int r, const std::vector<double>& deltas, double c, unsigned jobs,
                                    const Tolerances& tol) {
  if (deltas.empty()) throw Error(ErrorKind::InvalidArgument, "tightness sweep needs at least one delta");
  TightnessResult out;
  out.sweep.rows.resize(deltas.size());
  out.ratios.resize(deltas.size());
  parallel_for(deltas.size(), jobs, [&](std::size_t k) {
    const double delta = deltas[k];
    const double eps = c * std::pow(delta, r);
    const GeneratedExample ex = gen_example(TightGeneral{r, delta, eps});
    const BoundReport rep = full_report(ex.A, ex.dA, ex.selector, tol);
    out.sweep.rows[k] = sweep_row(delta, rep, 0);
    out.ratios[k] = rep.measured_sin / ex.leading_sin;
  });

  // Least squares of log(measured / eps) against log(delta).
  const std::size_t m = deltas.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double x = std::log(deltas[k]);
    const double y = std::log(out.sweep.rows[k].measured_sin / (c * std::pow(deltas[k], r)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  out.slope = den != 0.0 ? (m * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();

  char buf[160];
  std::snprintf(buf, sizeof buf, "r=%d: slope of log(sin/eps) vs log(delta) = %.4f (expected %d)", r, out.slope, -r);
  out.sweep.notes.emplace_back(buf);
  return out;
}

V2Record run_v2_necessity(double delta, double delta1, double eps, int n, const Tolerances& tol) {
  const GeneratedExample ex =
      n == 3 ? gen_example(V2Necessity3{delta, delta1, eps}) : gen_example(V2NecessityN{n, delta, delta1, eps});
  const BoundReport rep = full_report(ex.A, ex.dA, ex.selector, tol);
  V2Record v;
  v.measured = rep.measured_sin;
  v.new_perj = rep.new_value_perj;
  v.new_dl = rep.new_value_dl;
  v.kappa_V2 = rep.kappa_V2;
  v.reduced = rep.new_value_perj / rep.kappa_V2;
  v.leading = ex.leading_sin;
  v.dominated = v.measured <= v.new_perj;
  v.exceeds_reduced = v.measured > v.reduced;
  v.exceedance_required = delta1 <= delta / 10.0;
  return v;
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  ComplexMatrix G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = cd(rng.normal(), rng.normal());
  }
  return qr_decompose(G).Q;
}

cd in_unit_disk(Rng& rng) {
  const double rad = std::sqrt(rng.uniform());
  const double th = 2.0 * 3.14159265358979323846 * rng.uniform();
  return cd(rad * std::cos(th), rad * std::sin(th));
}

bool separated(const std::vector<cd>& pts, cd z, double sep) {
  for (cd p : pts) {
    if (std::abs(p - z) < sep) return false;
  }
  return true;
}

}  // namespace

RandomCase gen_random_case(std::uint64_t seed, const RandomCaseOptions& opt, const Tolerances& tol) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto n = static_cast<Eigen::Index>(rng.integer(opt.n_min, opt.n_max));
    const auto r = static_cast<Eigen::Index>(rng.integer(1, std::min<long long>(opt.r_max, n - 1)));

    // Spectrum.
    std::vector<cd> lam;
    const cd center = opt.disk_split ? 0.5 * in_unit_disk(rng) : cd(0.0, 0.0);
    bool ok = true;
    for (Eigen::Index k = 0; k < n && ok; ++k) {
      int tries = 0;
      cd z;
      do {
        if (!opt.disk_split) {
          z = in_unit_disk(rng);
        } else if (k < r) {
          z = center + 0.3 * in_unit_disk(rng);
        } else {
          const double th = 2.0 * 3.14159265358979323846 * rng.uniform();
          z = center + (0.8 + 0.7 * rng.uniform()) * cd(std::cos(th), std::sin(th));
        }
      } while (!separated(lam, z, opt.min_sep) && ++tries < 100);
      ok = tries < 100;
      lam.push_back(z);
    }
    if (!ok) continue;

    // X = U diag(s) W^* with log-uniform s, columns normalized.
    const double log_kappa = std::log(opt.kappa_max) * rng.uniform();
    RealVector s(n);
    for (Eigen::Index k = 0; k < n; ++k) s(k) = std::exp(-log_kappa * rng.uniform());
    ComplexMatrix X = random_unitary(rng, n) * s.cast<cd>().asDiagonal() * random_unitary(rng, n).adjoint();
    for (Eigen::Index k = 0; k < n; ++k) X.col(k).normalize();
    const double kx = cond2(X);
    if (!(kx <= opt.kappa_max)) continue;

    ComplexVector lv(n);
    for (Eigen::Index k = 0; k < n; ++k) lv(k) = lam[static_cast<std::size_t>(k)];
    RandomCase c;
    c.seed = seed;
    c.disk_center = center;
    c.A = X * lv.asDiagonal() * inverse(X, tol);

    try {
      c.ed = eig(c.A, tol);
      if (opt.disk_split) {
        c.selector = Disk{center, 0.5, true};
      } else {
        std::vector<Eigen::Index> pos(static_cast<std::size_t>(n));
        std::iota(pos.begin(), pos.end(), Eigen::Index{0});
        for (Eigen::Index k = n - 1; k > 0; --k) std::swap(pos[static_cast<std::size_t>(k)], pos[static_cast<std::size_t>(rng.integer(0, k))]);
        pos.resize(static_cast<std::size_t>(r));
        std::sort(pos.begin(), pos.end());
        c.selector = IndexSet{pos};
      }
      c.part = partition(c.ed, c.selector, tol);

      const double d1 = gap_delta1(c.part.lambda1, c.part.lambda2);
      if (!(d1 > 0.0)) continue;
      c.dA = gen_gaussian_perturbation(n, opt.perturb_scale * d1 / c.ed.kappa_X, rng.next_u64());
      bool accepted = false;
      for (int halving = 0; halving < 40 && !accepted; ++halving, c.dA *= 0.5) {
        try {
          c.ed_tilde = eig(c.A + c.dA, tol);
          c.part_tilde = match_partition(c.ed_tilde, c.part, NearestAssignment{}, tol);
        } catch (const Error&) {
          continue;
        }
        const double dl = gap_delta1(c.part_tilde.lambda1, c.part.lambda2);
        if (dl < opt.gap_ratio * spectral_norm(c.dA)) continue;
        if (opt.disk_split) {
          try {
            ComplexVector inside(2 * r), outside(2 * (n - r));
            inside << c.part.lambda1, c.part_tilde.lambda1;
            outside << c.part.lambda2, c.part_tilde.lambda2;
            require_enclosure({center, 0.5, 256}, inside, outside, tol);
          } catch (const Error&) {
            continue;
          }
        }
        accepted = true;
        break;
      }
      if (!accepted) continue;
      if (std::isfinite(opt.max_factor_cond) &&
          !(cond2(c.part.qr_V2.R) * cond2(c.part_tilde.qr_X1.R) <= opt.max_factor_cond)) {
        continue;
      }
      return c;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorKind::ConvergenceFailure, "random case generator exhausted its attempts (seed " + std::to_string(seed) + ")");
}

}  // namespace splab
