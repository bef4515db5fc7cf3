#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "splab/error.hpp"
#include "splab/experiments.hpp"
#include "splab/matrix_io.hpp"
#include "splab/serialize.hpp"

namespace splab::cli {

namespace {

struct Common {
  std::string input;
  std::string perturb;
  std::string select = "topk:1";
  std::string match = "same";
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  std::vector<std::string> tol;
};

struct Family {
  double eps = 1e-4;
  double eps1 = 1e-6;
  double delta = 0.1;
  double delta1 = 0.005;
  int r = 2;
  int n = 3;
  double norm = 1e-6;
  double c = 0.01;
  std::vector<double> eps_list{1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
  std::vector<double> deltas{0.2, 0.1, 0.05};
  std::size_t cases = 0;
  std::string perturb_out;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("SPLAB_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "SPLAB_SEED is not an unsigned integer");
  }
  return 42;
}

Tolerances resolve_tolerances(const Common& c) {
  Tolerances tol;
  for (const std::string& kv : c.tol) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "--tol expects KEY=VAL, got '" + kv + "'");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "--tol value is not a number in '" + kv + "'");
    }
    if (!tol.set(kv.substr(0, eq), v)) throw Error(ErrorKind::Parse, "unknown tolerance '" + kv.substr(0, eq) + "'");
  }
  return tol;
}

ComplexMatrix resolve_perturbation(const std::string& spec, Eigen::Index n, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "--perturb expects unit:i,j,EPS | gaussian:NORM | file:PATH");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  auto number = [&](const std::string& s) {
    const cd z = parse_complex(s);
    if (z.imag() != 0.0) throw Error(ErrorKind::Parse, "expected a real number, got '" + s + "'");
    return z.real();
  };
  if (kind == "unit") {
    std::vector<std::string> parts;
    std::stringstream ss(arg);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw Error(ErrorKind::Parse, "unit perturbation expects unit:i,j,EPS");
    const double i = number(parts[0]), j = number(parts[1]);
    if (i != std::floor(i) || j != std::floor(j)) throw Error(ErrorKind::Parse, "unit indices must be integers");
    return gen_unit_perturbation(n, static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), number(parts[2]));
  }
  if (kind == "gaussian") return gen_gaussian_perturbation(n, number(arg), seed);
  if (kind == "file") {
    ComplexMatrix dA = read_matrix_file(arg);
    if (dA.rows() != n || dA.cols() != n) throw Error(ErrorKind::ShapeMismatch, "perturbation file shape differs from A");
    return dA;
  }
  throw Error(ErrorKind::Parse, "unknown perturbation kind '" + kind + "'");
}

MatchStrategy resolve_strategy(const Common& c, const SpectralSelector& sel) {
  if (c.match == "same") return SameSelector{sel};
  if (c.match == "nearest") return NearestAssignment{};
  throw Error(ErrorKind::Parse, "--match expects same or nearest");
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
}

std::string report_to_csv(const BoundReport& rep) {
  // Flat field,value listing of the scalar part of the report.
  std::ostringstream os;
  os << "field,value\n";
  auto row = [&](const char* k, double v) { os << k << ',' << format_real(v) << '\n'; };
  row("delta0", rep.gap.delta0);
  row("delta1", rep.gap.delta1);
  row("delta_lambda", rep.gap.delta_lambda);
  row("a", rep.a);
  row("kappa_X1", rep.kappa_X1);
  row("kappa_V2", rep.kappa_V2);
  row("dA_spec", rep.dA_spec);
  row("dA_frob", rep.dA_frob);
  row("classical_value", rep.classical_value);
  row("classical_valid", rep.classical_valid);
  row("new_value_perj", rep.new_value_perj);
  row("new_value_dl", rep.new_value_dl);
  row("sep_frob", rep.sep_frob);
  row("sep_lower", rep.sep_lower);
  row("stewart_condition_ok", rep.stewart_condition_ok);
  row("measured_sin", rep.measured_sin);
  row("measured_tan", rep.measured_tan);
  row("gap_ok", rep.gap_ok);
  return os.str();
}

int cmd_eig(const Common& c, std::ostream& out) {
  if (c.input.empty()) throw Error(ErrorKind::Parse, "eig needs --input");
  const EigenDecomposition ed = eig(read_matrix_file(c.input), resolve_tolerances(c));
  emit(c, eig_to_json(ed), out);
  return kOk;
}

int cmd_report(const Common& c, std::ostream& out, std::ostream& err) {
  if (c.input.empty()) throw Error(ErrorKind::Parse, "report needs --input");
  if (c.perturb.empty()) throw Error(ErrorKind::Parse, "report needs --perturb");
  const Tolerances tol = resolve_tolerances(c);
  const std::uint64_t seed = resolve_seed(c);
  const ComplexMatrix A = read_matrix_file(c.input);
  const ComplexMatrix dA = resolve_perturbation(c.perturb, A.rows(), seed);
  const SpectralSelector sel = parse_selector(c.select);
  const BoundReport rep = full_report(A, dA, sel, resolve_strategy(c, sel), tol);
  emit(c, c.format == "csv" ? report_to_csv(rep) : report_to_json(rep, seed), out);
  if (rep.assumptions_failed()) {
    err << "assumption flag:" << (rep.gap_ok ? "" : " delta_lambda = 0") << (rep.classical_valid ? "" : " classical bound vacuous")
        << '\n';
    return kAssumption;
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite, const Family& f, std::ostream& out, std::ostream& err) {
  SuiteOptions opt;
  opt.cases = f.cases;
  opt.seed = resolve_seed(c);
  opt.jobs = c.jobs;
  opt.tol = resolve_tolerances(c);
  const std::vector<SuiteCase> cases = run_suite(suite, opt);
  emit(c, suite_to_json(cases), out);
  std::size_t failed = 0, skipped = 0;
  for (const SuiteCase& k : cases) {
    failed += k.pass ? 0 : 1;
    skipped += k.skipped ? 1 : 0;
  }
  err << suite << ": " << cases.size() - failed << "/" << cases.size() << " passed";
  if (skipped) err << " (" << skipped << " skipped)";
  err << '\n';
  return failed == 0 ? kOk : kNumerical;
}

ExampleSpec family_spec(const std::string& family, const Family& f) {
  if (family == "example11") return Example11{f.eps};
  if (family == "tight_r2") return TightR2{f.delta, f.eps};
  if (family == "tight_general") return TightGeneral{f.r, f.delta, f.eps};
  if (family == "v2_necessity3") return V2Necessity3{f.delta, f.delta1, f.eps};
  if (family == "v2_necessity_n") return V2NecessityN{f.n, f.delta, f.delta1, f.eps};
  throw Error(ErrorKind::Parse, "unknown example family '" + family + "'");
}

int cmd_example(const Common& c, const std::string& family, const Family& f, std::ostream& out) {
  const GeneratedExample ex = gen_example(family_spec(family, f));
  emit(c, matrix_to_json(ex.A) + "\n", out);
  if (!f.perturb_out.empty()) write_text_file(f.perturb_out, matrix_to_json(ex.dA) + "\n");
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& kind, const Family& f, std::ostream& out, std::ostream& err) {
  const Tolerances tol = resolve_tolerances(c);
  const bool csv = c.format == "csv";
  if (kind == "table1") {
    const Table1Result t = run_table1_sweep(f.eps_list, f.norm, resolve_seed(c), c.jobs, tol);
    emit(c, csv ? sweep_to_csv(t.sweep) : table1_to_json(t), out);
    for (const std::string& note : t.sweep.notes) err << "note: " << note << '\n';
    return kOk;
  }
  if (kind == "tightness") {
    const TightnessResult t = run_tightness_sweep(f.r, f.deltas, f.c, c.jobs, tol);
    emit(c, csv ? sweep_to_csv(t.sweep) : tightness_to_json(t), out);
    for (const std::string& note : t.sweep.notes) err << "note: " << note << '\n';
    return kOk;
  }
  if (kind == "special") {
    const std::vector<SpecialRow> rows = run_special_perturbation_suite(f.eps, f.eps1);
    emit(c, csv ? special_to_csv(rows) : special_to_json(rows), out);
    for (const SpecialRow& r : rows) {
      if (!r.pass) return kNumerical;
    }
    return kOk;
  }
  if (kind == "v2") {
    const V2Record v = run_v2_necessity(f.delta, f.delta1, f.eps, f.n, tol);
    emit(c, v2_to_json(v), out);
    return v.pass() ? kOk : kNumerical;
  }
  throw Error(ErrorKind::Parse, "unknown sweep '" + kind + "'");
}

int exit_code_for(ErrorKind k) {
  if (k == ErrorKind::GapViolated) return kAssumption;
  return is_numerical(k) ? kNumerical : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant-subspace perturbation workbench"};
  app.require_subcommand(1);
  Common c;
  Family f;
  std::string suite, family, sweep_kind;

  auto shared = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "PRNG seed (default 42, or SPLAB_SEED)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "tolerance override KEY=VAL (repeatable)");
  };

  CLI::App* eig_cmd = app.add_subcommand("eig", "eigendecomposition of a matrix file");
  eig_cmd->add_option("--input", c.input, "matrix file (.json or .csv)")->required();
  shared(eig_cmd);

  CLI::App* report = app.add_subcommand("report", "bounds and measured distance for A and A + dA");
  report->add_option("--input", c.input, "matrix file")->required();
  report->add_option("--perturb", c.perturb, "unit:i,j,EPS | gaussian:NORM | file:PATH")->required();
  report->add_option("--select", c.select, "topk:K | indices:i,j,... | disk:C:R:inside|outside");
  report->add_option("--match", c.match, "same or nearest")->check(CLI::IsMember({"same", "nearest"}));
  shared(report);

  CLI::App* verify = app.add_subcommand("verify", "run a seeded verification suite");
  verify->add_option("suite", suite, "lemma32 | lemma33 | contour | dominance | scaling")->required();
  verify->add_option("--cases", f.cases, "number of cases (default per suite)");
  shared(verify);

  CLI::App* example = app.add_subcommand("example", "write an example matrix");
  example->add_option("family", family, "example11 | tight_r2 | tight_general | v2_necessity3 | v2_necessity_n")
      ->required();
  example->add_option("--perturb-out", f.perturb_out, "also write the family's perturbation here");

  CLI::App* sweep = app.add_subcommand("sweep", "run a reproduction sweep");
  sweep->add_option("kind", sweep_kind, "table1 | tightness | special | v2")->required();
  sweep->add_option("--eps-list", f.eps_list, "eps grid")->delimiter(',');
  sweep->add_option("--norm", f.norm, "spectral norm of the Gaussian perturbation");
  sweep->add_option("--deltas", f.deltas, "delta grid")->delimiter(',');
  sweep->add_option("--c", f.c, "eps = c delta^r");
  shared(sweep);

  for (CLI::App* sub : {example, sweep}) {
    sub->add_option("--eps", f.eps);
    sub->add_option("--eps1", f.eps1);
    sub->add_option("--delta", f.delta);
    sub->add_option("--delta1", f.delta1);
    sub->add_option("--r", f.r);
    sub->add_option("--n", f.n);
  }
  shared(example);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (eig_cmd->parsed()) return cmd_eig(c, out);
    if (report->parsed()) return cmd_report(c, out, err);
    if (verify->parsed()) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "usage error: unknown suite '" << suite << "'\n";
        return kUsage;
      }
      return cmd_verify(c, suite, f, out, err);
    }
    if (example->parsed()) return cmd_example(c, family, f, out);
    return cmd_sweep(c, sweep_kind, f, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace splab::cli
