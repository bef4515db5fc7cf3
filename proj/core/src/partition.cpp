#include "splab/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "splab/error.hpp"
#include "splab/matrix_io.hpp"

namespace splab {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

long long parse_int(std::string_view s, std::string_view what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, "selector: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string shortest(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Eigen::MatrixXd distance_matrix(const ComplexVector& rows, const ComplexVector& cols) {
  Eigen::MatrixXd d(rows.size(), cols.size());
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols.size(); ++j) d(i, j) = std::abs(rows(i) - cols(j));
  }
  return d;
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<Eigen::Index>& a) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += cost(static_cast<Eigen::Index>(i), a[i]);
  return total;
}

}  // namespace

SpectralSelector parse_selector(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts.front();
  if (kind == "topk") {
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "selector: expected topk:K");
    const long long k = parse_int(parts[1], "k");
    if (k < 1) throw Error(ErrorKind::Parse, "selector: k must be >= 1");
    return TopKMagnitude{static_cast<Eigen::Index>(k)};
  }
  if (kind == "indices") {
    if (parts.size() != 2 || parts[1].empty()) throw Error(ErrorKind::Parse, "selector: expected indices:i,j,...");
    IndexSet sel;
    for (std::string_view item : split(parts[1], ',')) {
      const long long i = parse_int(item, "index");
      if (i < 0) throw Error(ErrorKind::Parse, "selector: negative index");
      sel.indices.push_back(static_cast<Eigen::Index>(i));
    }
    return sel;
  }
  if (kind == "disk") {
    if (parts.size() != 4) throw Error(ErrorKind::Parse, "selector: expected disk:CENTER:RADIUS:inside|outside");
    Disk d;
    try {
      d.center = parse_complex(parts[1]);
      d.radius = parse_complex(parts[2]).real();
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, std::string("selector: ") + e.what());
    }
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw Error(ErrorKind::Parse, "selector: radius must be > 0");
    if (parts[3] == "inside") d.inside = true;
    else if (parts[3] == "outside") d.inside = false;
    else throw Error(ErrorKind::Parse, "selector: expected inside or outside");
    return d;
  }
  throw Error(ErrorKind::Parse, "selector: unknown kind '" + std::string(kind) + "'");
}

std::string format_selector(const SpectralSelector& sel) {
  if (const auto* t = std::get_if<TopKMagnitude>(&sel)) return "topk:" + std::to_string(t->k);
  if (const auto* s = std::get_if<IndexSet>(&sel)) {
    std::string out = "indices:";
    for (std::size_t i = 0; i < s->indices.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s->indices[i]);
    }
    return out;
  }
  const auto& d = std::get<Disk>(sel);
  const double im = d.center.imag();
  return "disk:" + shortest(d.center.real()) + (std::signbit(im) ? "-" : "+") + shortest(std::abs(im)) + "i:" +
         shortest(d.radius) + (d.inside ? ":inside" : ":outside");
}

SpectralPartition partition_from_indices(const EigenDecomposition& ed, std::vector<Eigen::Index> idx1,
                                         const Tolerances& tol) {
  const Eigen::Index n = ed.size();
  std::sort(idx1.begin(), idx1.end());
  if (std::adjacent_find(idx1.begin(), idx1.end()) != idx1.end()) {
    throw Error(ErrorKind::InvalidArgument, "selector indices are not distinct");
  }
  for (Eigen::Index i : idx1) {
    if (i < 0 || i >= n) throw Error(ErrorKind::IndexOutOfRange, "selector index " + std::to_string(i));
  }
  if (idx1.empty() || static_cast<Eigen::Index>(idx1.size()) == n) {
    throw Error(ErrorKind::EmptySide, "selector must pick a proper nonempty subset");
  }

  SpectralPartition p;
  p.idx1 = std::move(idx1);
  for (Eigen::Index i = 0, k = 0; i < n; ++i) {
    if (k < static_cast<Eigen::Index>(p.idx1.size()) && p.idx1[static_cast<std::size_t>(k)] == i) {
      ++k;
    } else {
      p.idx2.push_back(i);
    }
  }
  p.r = static_cast<Eigen::Index>(p.idx1.size());
  p.lambda1 = take(ed.lambda, p.idx1);
  p.lambda2 = take(ed.lambda, p.idx2);
  p.X1 = take_columns(ed.X, p.idx1);
  p.X2 = take_columns(ed.X, p.idx2);
  p.V1 = take_columns(ed.V, p.idx1);
  p.V2 = take_columns(ed.V, p.idx2);
  p.qr_X1 = qr_decompose(p.X1, tol);
  p.qr_V2 = qr_decompose(p.V2, tol);
  return p;
}

SpectralPartition partition(const EigenDecomposition& ed, const SpectralSelector& sel, const Tolerances& tol) {
  const Eigen::Index n = ed.size();
  std::vector<Eigen::Index> idx1;

  if (const auto* t = std::get_if<TopKMagnitude>(&sel)) {
    if (t->k < 1 || t->k > n - 1) {
      throw Error(ErrorKind::EmptySide, "topk needs 1 <= k <= n-1 (k=" + std::to_string(t->k) + ")");
    }
    idx1.resize(static_cast<std::size_t>(t->k));
    std::iota(idx1.begin(), idx1.end(), Eigen::Index{0});
  } else if (const auto* s = std::get_if<IndexSet>(&sel)) {
    idx1 = s->indices;
  } else {
    const auto& d = std::get<Disk>(sel);
    if (!(d.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "disk radius must be positive");
    for (Eigen::Index i = 0; i < n; ++i) {
      const double dist = std::abs(ed.lambda(i) - d.center);
      if (std::abs(dist - d.radius) <= tol.disk_tol * d.radius) {
        std::ostringstream os;
        os << "eigenvalue " << ed.lambda(i) << " lies on the selector circle";
        throw Error(ErrorKind::BoundaryAmbiguity, os.str());
      }
      if ((dist < d.radius) == d.inside) idx1.push_back(i);
    }
  }
  return partition_from_indices(ed, std::move(idx1), tol);
}

SpectralPartition match_split(const EigenDecomposition& ed_tilde, const SpectralPartition& base,
                              const MatchStrategy& strategy, const Tolerances& tol) {
  SpectralPartition out;
  if (const auto* same = std::get_if<SameSelector>(&strategy)) {
    out = partition(ed_tilde, same->selector, tol);
    if (out.r != base.r) {
      throw Error(ErrorKind::ShapeMismatch, "selector picks " + std::to_string(out.r) +
                                                " perturbed eigenvalues, base has " + std::to_string(base.r));
    }
  } else {
    const Eigen::Index n = ed_tilde.size();
    if (n != base.n()) throw Error(ErrorKind::ShapeMismatch, "perturbed and base spectra differ in size");

    ComplexVector base_lambda(n);
    std::vector<char> in_s1(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < base.idx1.size(); ++k) {
      base_lambda(base.idx1[k]) = base.lambda1(static_cast<Eigen::Index>(k));
      in_s1[static_cast<std::size_t>(base.idx1[k])] = 1;
    }
    for (std::size_t k = 0; k < base.idx2.size(); ++k) {
      base_lambda(base.idx2[k]) = base.lambda2(static_cast<Eigen::Index>(k));
    }

    const Eigen::MatrixXd cost = distance_matrix(ed_tilde.lambda, base_lambda);
    const std::vector<Eigen::Index> a = solve_assignment(cost);
    const double best = assignment_cost(cost, a);

    std::vector<Eigen::Index> idx1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (in_s1[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])]) idx1.push_back(i);
    }

    // Any assignment yielding a different split moves some currently
    // studied eigenvalue to the complement side; the cheapest such
    // alternative must be clearly worse than the optimum.
    const double scale = std::max({spectral_radius(ed_tilde.lambda), spectral_radius(base_lambda),
                                   std::numeric_limits<double>::min()});
    for (Eigen::Index i : idx1) {
      Eigen::MatrixXd forced = cost;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (in_s1[static_cast<std::size_t>(j)]) forced(i, j) = std::numeric_limits<double>::infinity();
      }
      const double alt = assignment_cost(cost, solve_assignment(forced));
      if (alt - best <= tol.assign_tol * scale) {
        throw Error(ErrorKind::AssignmentAmbiguous, "two eigenvalue assignments with different splits tie");
      }
    }

    out = partition_from_indices(ed_tilde, std::move(idx1), tol);
    out.assignment = a;
  }
  return out;
}

SpectralPartition match_partition(const EigenDecomposition& ed_tilde, const SpectralPartition& base,
                                  const MatchStrategy& strategy, const Tolerances& tol) {
  SpectralPartition out = match_split(ed_tilde, base, strategy, tol);
  if (!(gap_delta1(out.lambda1, base.lambda2) > 0.0)) {
    throw Error(ErrorKind::GapViolated, "perturbed studied eigenvalue coincides with the complement spectrum");
  }
  return out;
}

}  // namespace splab
