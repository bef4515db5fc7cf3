#pragma once

#include <string>
#include <string_view>

#include "splab/matrix.hpp"

namespace splab {

/// Matrix files are JSON objects
///   {"rows": n, "cols": m, "entries": [[re, im], ...]}   (row-major)
/// CSV with cells "a", "a+bi", "a-bi", "bi" is accepted on input only.
ComplexMatrix parse_matrix_json(std::string_view text);
ComplexMatrix parse_matrix_csv(std::string_view text);

/// Dispatches on the extension: ".csv" is CSV, anything else JSON.
ComplexMatrix read_matrix_file(const std::string& path);

/// Compact JSON; reals use shortest round-trip decimal form.
std::string matrix_to_json(const ComplexMatrix& Z);

/// Parses one complex cell; throws Parse on malformed input.
cd parse_complex(std::string_view cell);

/// 17 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_real(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace splab
