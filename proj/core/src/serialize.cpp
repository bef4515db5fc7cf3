#include "splab/serialize.hpp"

#include <sstream>

#include <json.hpp>

#include "splab/matrix_io.hpp"

namespace splab {

namespace {

using Json = nlohmann::ordered_json;

Json real(double x) { return format_real(x); }

Json complex_list(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({real(v(k).real()), real(v(k).imag())});
  return a;
}

Json index_list(const std::vector<Eigen::Index>& v) {
  Json a = Json::array();
  for (Eigen::Index i : v) a.push_back(i);
  return a;
}

Json sweep_row_json(const SweepRow& r) {
  Json o;
  o["param"] = real(r.param);
  o["measured_sin"] = real(r.measured_sin);
  o["classical"] = real(r.classical);
  o["new_perj"] = real(r.new_perj);
  o["new_dl"] = real(r.new_dl);
  o["delta0"] = real(r.delta0);
  o["delta1"] = real(r.delta1);
  o["delta_lambda"] = real(r.delta_lambda);
  o["kappa_X1"] = real(r.kappa_X1);
  o["kappa_V2"] = real(r.kappa_V2);
  o["seed"] = r.seed;
  return o;
}

Json sweep_json(const SweepResult& s) {
  Json o;
  o["rows"] = Json::array();
  for (const SweepRow& r : s.rows) o["rows"].push_back(sweep_row_json(r));
  o["notes"] = s.notes;
  return o;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string eig_to_json(const EigenDecomposition& ed) {
  Json o;
  o["n"] = ed.size();
  o["lambda"] = complex_list(ed.lambda);
  o["kappa_X"] = real(ed.kappa_X);
  o["X"] = Json::parse(matrix_to_json(ed.X));
  o["V"] = Json::parse(matrix_to_json(ed.V));
  return dump(o);
}

std::string report_to_json(const BoundReport& rep, std::optional<std::uint64_t> seed) {
  Json o;
  o["n"] = rep.n;
  o["r"] = rep.r;
  o["selector"] = rep.selector;
  o["strategy"] = rep.strategy;
  if (seed) o["seed"] = *seed;
  o["delta0"] = real(rep.gap.delta0);
  o["t0_star"] = {real(rep.gap.t0_star.real()), real(rep.gap.t0_star.imag())};
  o["delta1"] = real(rep.gap.delta1);
  o["delta_lambda"] = real(rep.gap.delta_lambda);
  o["a"] = real(rep.a);
  o["kappa_X1"] = real(rep.kappa_X1);
  o["kappa_V2"] = real(rep.kappa_V2);
  o["dA_spec"] = real(rep.dA_spec);
  o["dA_frob"] = real(rep.dA_frob);
  o["classical_value"] = real(rep.classical_value);
  o["classical_valid"] = rep.classical_valid;
  o["new_value_perj"] = real(rep.new_value_perj);
  o["new_value_dl"] = real(rep.new_value_dl);
  o["sep_frob"] = real(rep.sep_frob);
  o["sep_lower"] = real(rep.sep_lower);
  o["stewart_condition_ok"] = rep.stewart_condition_ok;
  o["measured_sin"] = real(rep.measured_sin);
  o["measured_tan"] = real(rep.measured_tan);
  o["sin_sqrt_form"] = real(rep.sin_sqrt_form);
  o["varah_unscaled"] = real(rep.varah_unscaled);
  o["gap_ok"] = rep.gap_ok;
  o["dominance_ok"] = rep.dominance_ok;
  o["classical_dominance_ok"] = rep.classical_dominance_ok;
  o["lambda1"] = complex_list(rep.lambda1);
  o["lambda2"] = complex_list(rep.lambda2);
  o["lambda1_tilde"] = complex_list(rep.lambda1_tilde);
  o["idx1"] = index_list(rep.idx1);
  o["idx1_tilde"] = index_list(rep.idx1_tilde);
  o["assignment"] = index_list(rep.assignment);
  return dump(o);
}

std::string sweep_to_csv(const SweepResult& s) {
  std::ostringstream os;
  os << "param,measured_sin,classical,new_perj,new_dl,delta0,delta1,delta_lambda,kappa_X1,kappa_V2,seed\n";
  for (const SweepRow& r : s.rows) {
    os << format_real(r.param) << ',' << format_real(r.measured_sin) << ',' << format_real(r.classical) << ','
       << format_real(r.new_perj) << ',' << format_real(r.new_dl) << ',' << format_real(r.delta0) << ','
       << format_real(r.delta1) << ',' << format_real(r.delta_lambda) << ',' << format_real(r.kappa_X1) << ','
       << format_real(r.kappa_V2) << ',' << r.seed << '\n';
  }
  return os.str();
}

std::string sweep_to_json(const SweepResult& s) { return dump(sweep_json(s)); }

std::string suite_to_json(const std::vector<SuiteCase>& cases) {
  Json a = Json::array();
  for (const SuiteCase& c : cases) {
    Json o;
    o["case_id"] = c.case_id;
    o["seed"] = c.seed;
    o["residual"] = real(c.residual);
    o["threshold"] = real(c.threshold);
    o["pass"] = c.pass;
    if (c.skipped) o["skipped"] = true;
    if (!c.error.empty()) o["error"] = c.error;
    for (const auto& [k, v] : c.extras) o[k] = real(v);
    a.push_back(o);
  }
  return dump(a);
}

std::string special_to_json(const std::vector<SpecialRow>& rows) {
  Json a = Json::array();
  for (const SpecialRow& r : rows) {
    Json o;
    o["i"] = r.i;
    o["j"] = r.j;
    o["measured_sin"] = real(r.measured);
    o["brute_force_sin"] = real(r.brute_force);
    o["limit"] = real(r.limit);
    o["zero_effect"] = r.zero_effect;
    o["pass"] = r.pass;
    a.push_back(o);
  }
  return dump(a);
}

std::string special_to_csv(const std::vector<SpecialRow>& rows) {
  std::ostringstream os;
  os << "i,j,measured_sin,brute_force_sin,limit,zero_effect,pass\n";
  for (const SpecialRow& r : rows) {
    os << r.i << ',' << r.j << ',' << format_real(r.measured) << ',' << format_real(r.brute_force) << ','
       << format_real(r.limit) << ',' << (r.zero_effect ? 1 : 0) << ',' << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string table1_to_json(const Table1Result& t) {
  Json o = sweep_json(t.sweep);
  o["reference_checks"] = Json::array();
  for (const Table1Check& c : t.checks) {
    Json k;
    k["eps"] = real(c.eps);
    k["printed"] = real(c.printed);
    k["computed"] = real(c.computed);
    k["rel_diff"] = real(c.rel_diff);
    k["suspect"] = c.suspect;
    k["agrees"] = c.agrees;
    o["reference_checks"].push_back(k);
  }
  return dump(o);
}

std::string tightness_to_json(const TightnessResult& t) {
  Json o = sweep_json(t.sweep);
  o["ratios"] = Json::array();
  for (double r : t.ratios) o["ratios"].push_back(real(r));
  o["slope"] = real(t.slope);
  return dump(o);
}

std::string v2_to_json(const V2Record& v) {
  Json o;
  o["measured_sin"] = real(v.measured);
  o["new_perj"] = real(v.new_perj);
  o["new_dl"] = real(v.new_dl);
  o["kappa_V2"] = real(v.kappa_V2);
  o["new_over_kappa_V2"] = real(v.reduced);
  o["leading_term"] = real(v.leading);
  o["dominated"] = v.dominated;
  o["exceeds_reduced"] = v.exceeds_reduced;
  o["exceedance_required"] = v.exceedance_required;
  o["pass"] = v.pass();
  return dump(o);
}

}  // namespace splab
