#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splab/config.hpp"

namespace splab {

struct SuiteCase {
  std::size_t case_id = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string error;  // set when the case threw
  std::vector<std::pair<std::string, double>> extras;
};

struct SuiteOptions {
  std::size_t cases = 0;  // 0 selects the suite default
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  Tolerances tol{};
};

/// lemma32 | lemma33 | contour | dominance | scaling.
const std::vector<std::string>& suite_names();
std::size_t default_case_count(std::string_view suite);

/// Case i uses seed derive_seed(opt.seed, i); results are ordered by case id
/// whatever the worker count. Throws InvalidArgument for an unknown suite.
std::vector<SuiteCase> run_suite(std::string_view suite, const SuiteOptions& opt);

bool all_pass(const std::vector<SuiteCase>& cases);

}  // namespace splab
