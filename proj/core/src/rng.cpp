#include "splab/rng.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "splab/error.hpp"

namespace splab {

double Rng::uniform() {
  // Top 53 bits, shifted to the cell midpoint so 0 and 1 are never produced.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return normal_quantile(uniform()); }

long long Rng::integer(long long lo, long long hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "integer range is empty");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(static_cast<double>(span) * uniform());
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "normal_quantile needs p in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

}  // namespace splab
