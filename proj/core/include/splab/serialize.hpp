#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splab/experiments.hpp"
#include "splab/suites.hpp"

namespace splab {

// Reals in reports and sweeps are strings with 17 significant digits
// ("inf" for infinity); matrices keep the numeric matrix-file layout.

std::string eig_to_json(const EigenDecomposition& ed);
std::string report_to_json(const BoundReport& rep, std::optional<std::uint64_t> seed = std::nullopt);

std::string sweep_to_csv(const SweepResult& s);
std::string sweep_to_json(const SweepResult& s);

std::string suite_to_json(const std::vector<SuiteCase>& cases);
std::string special_to_json(const std::vector<SpecialRow>& rows);
std::string special_to_csv(const std::vector<SpecialRow>& rows);
std::string table1_to_json(const Table1Result& t);
std::string tightness_to_json(const TightnessResult& t);
std::string v2_to_json(const V2Record& v);

}  // namespace splab
