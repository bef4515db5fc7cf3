#include "splab/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "splab/error.hpp"

namespace splab {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

double json_real(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    double x = 0.0;
    if (parse_double(v.get<std::string>(), x)) return x;
  }
  throw Error(ErrorKind::Parse, "matrix entry component is not a number: " + v.dump());
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& doc);

cd parse_complex(std::string_view cell) {
  std::string_view s = trim(cell);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty cell");

  if (s.back() != 'i' && s.back() != 'j') {
    double re = 0.0;
    if (!parse_double(s, re)) throw Error(ErrorKind::Parse, "cannot parse '" + std::string(cell) + "'");
    return {re, 0.0};
  }
  s.remove_suffix(1);

  // Split at the last sign that is not the leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  if (im_part == "+" || im_part == "-" || im_part.empty()) {
    im = im_part == "-" ? -1.0 : 1.0;
  } else if (!parse_double(im_part, im)) {
    throw Error(ErrorKind::Parse, "cannot parse imaginary part of '" + std::string(cell) + "'");
  }
  if (!re_part.empty() && !parse_double(re_part, re)) {
    throw Error(ErrorKind::Parse, "cannot parse real part of '" + std::string(cell) + "'");
  }
  return {re, im};
}

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    return matrix_from_json(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed matrix JSON: ") + e.what());
  }
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
    throw Error(ErrorKind::Parse, "matrix JSON needs \"rows\", \"cols\" and \"entries\"");
  }
  const auto rows = doc.at("rows").get<long long>();
  const auto cols = doc.at("cols").get<long long>();
  if (rows < 1 || cols < 1) throw Error(ErrorKind::Parse, "rows and cols must be positive");
  const json& entries = doc.at("entries");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    throw Error(ErrorKind::Parse, "entries must hold rows*cols values");
  }
  ComplexMatrix Z(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const json& e = entries[static_cast<std::size_t>(k)];
    cd z;
    if (e.is_array() && e.size() == 2) {
      z = cd(json_real(e[0]), json_real(e[1]));
    } else if (e.is_number()) {
      z = cd(e.get<double>(), 0.0);
    } else {
      std::ostringstream os;
      os << "entry " << k << " must be [re, im]";
      throw Error(ErrorKind::Parse, os.str());
    }
    Z(k / cols, k % cols) = z;
  }
  require_valid(Z, "matrix file");
  return Z;
}

ComplexMatrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<cd>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<cd> row;
    std::size_t col_no = 0, cpos = 0;
    while (cpos <= line.size()) {
      std::size_t comma = line.find(',', cpos);
      if (comma == std::string_view::npos) comma = line.size();
      ++col_no;
      try {
        row.push_back(parse_complex(line.substr(cpos, comma - cpos)));
      } catch (const Error& e) {
        std::ostringstream os;
        os << "row " << line_no << ", col " << col_no << ": " << e.what();
        throw Error(ErrorKind::Parse, os.str());
      }
      cpos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << "row " << line_no << ": expected " << rows.front().size() << " columns, found " << row.size();
      throw Error(ErrorKind::Parse, os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "CSV holds no rows");

  ComplexMatrix Z(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      Z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  require_valid(Z, "matrix file");
  return Z;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const bool is_csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  try {
    return is_csv ? parse_matrix_csv(text) : parse_matrix_json(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string matrix_to_json(const ComplexMatrix& Z) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    for (Eigen::Index j = 0; j < Z.cols(); ++j) {
      entries.push_back({Z(i, j).real(), Z(i, j).imag()});
    }
  }
  json doc;
  doc["rows"] = Z.rows();
  doc["cols"] = Z.cols();
  doc["entries"] = std::move(entries);
  return doc.dump();
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace splab
