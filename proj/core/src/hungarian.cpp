#include <cmath>
#include <limits>
#include <vector>

#include "splab/error.hpp"
#include "splab/partition.hpp"

namespace splab {

// Shortest augmenting path Hungarian method with row/column potentials,
// O(n^3). Forbidden (+inf) entries are skipped when relaxing.
std::vector<Eigen::Index> solve_assignment(const Eigen::MatrixXd& cost) {
  const Eigen::Index n = cost.rows();
  if (cost.cols() != n) throw Error(ErrorKind::ShapeMismatch, "assignment cost must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto N = static_cast<std::size_t>(n);

  std::vector<double> u(N + 1, 0.0), v(N + 1, 0.0);
  std::vector<std::size_t> p(N + 1, 0), way(N + 1, 0);

  for (std::size_t i = 1; i <= N; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(N + 1, kInf);
    std::vector<char> used(N + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= N; ++j) {
        if (used[j]) continue;
        const double c = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1));
        if (std::isfinite(c)) {
          const double cur = c - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) throw Error(ErrorKind::InvalidArgument, "no feasible assignment");
      for (std::size_t j = 0; j <= N; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Eigen::Index> assignment(N, -1);
  for (std::size_t j = 1; j <= N; ++j) {
    assignment[p[j] - 1] = static_cast<Eigen::Index>(j - 1);
  }
  return assignment;
}

}  // namespace splab
