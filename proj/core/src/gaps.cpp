#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "splab/error.hpp"
#include "splab/partition.hpp"

namespace splab {

namespace {

constexpr int kGridDivisions = 200;
constexpr std::size_t kRefineStarts = 8;
constexpr double kInflate = 1.5;

struct Candidate {
  double value;
  cd t;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.t.real() != b.t.real()) return a.t.real() < b.t.real();
  return a.t.imag() < b.t.imag();
}

struct ObjectiveData {
  const ComplexVector* l1;
  const ComplexVector* l2;
};

double negated_objective(const gsl_vector* x, void* params) {
  const auto* d = static_cast<const ObjectiveData*>(params);
  return -delta0_objective(*d->l1, *d->l2, cd(gsl_vector_get(x, 0), gsl_vector_get(x, 1)));
}

Candidate nelder_mead(const ComplexVector& l1, const ComplexVector& l2, cd start, double step, double xtol) {
  static const gsl_error_handler_t* previous = gsl_set_error_handler_off();
  (void)previous;
  ObjectiveData data{&l1, &l2};
  gsl_multimin_function fn{&negated_objective, 2, &data};

  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* ss = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, start.real());
  gsl_vector_set(x, 1, start.imag());
  gsl_vector_set_all(ss, step);

  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  for (int iter = 0; iter < 5000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), xtol) == GSL_SUCCESS) break;
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(s);
  Candidate c{-gsl_multimin_fminimizer_minimum(s), cd(gsl_vector_get(best, 0), gsl_vector_get(best, 1))};

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return c;
}

void require_nonempty(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() == 0 || b.size() == 0) throw Error(ErrorKind::EmptySide, "gap of an empty spectral set");
}

}  // namespace

double gap_delta1(const ComplexVector& lambda1, const ComplexVector& lambda2) {
  require_nonempty(lambda1, lambda2);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lambda1.size(); ++i) {
    for (Eigen::Index j = 0; j < lambda2.size(); ++j) {
      best = std::min(best, std::abs(lambda1(i) - lambda2(j)));
    }
  }
  return best;
}

double delta0_objective(const ComplexVector& lambda1, const ComplexVector& lambda2, cd t0) {
  double min1 = std::numeric_limits<double>::infinity(), max1 = 0.0;
  double min2 = std::numeric_limits<double>::infinity(), max2 = 0.0;
  for (Eigen::Index i = 0; i < lambda1.size(); ++i) {
    const double d = std::abs(lambda1(i) - t0);
    min1 = std::min(min1, d);
    max1 = std::max(max1, d);
  }
  for (Eigen::Index j = 0; j < lambda2.size(); ++j) {
    const double d = std::abs(lambda2(j) - t0);
    min2 = std::min(min2, d);
    max2 = std::max(max2, d);
  }
  return std::max(min1 - max2, min2 - max1);
}

Delta0Result gap_delta0(const ComplexVector& lambda1, const ComplexVector& lambda2) {
  require_nonempty(lambda1, lambda2);

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto extend = [&](const ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      xmin = std::min(xmin, v(i).real());
      xmax = std::max(xmax, v(i).real());
      ymin = std::min(ymin, v(i).imag());
      ymax = std::max(ymax, v(i).imag());
    }
  };
  extend(lambda1);
  extend(lambda2);

  const cd center(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
  const double width = std::max(xmax - xmin, ymax - ymin);
  if (width == 0.0) return {0.0, center};

  // Square box inflated by 50%, pitch = (box diameter) / 200.
  const double half = 0.5 * kInflate * width;
  const double diameter = 2.0 * half * std::sqrt(2.0);
  const double pitch = diameter / kGridDivisions;
  const int steps = static_cast<int>(std::ceil(2.0 * half / pitch));

  std::vector<Candidate> top;
  top.reserve(kRefineStarts + 1);
  for (int a = 0; a <= steps; ++a) {
    const double x = center.real() - half + a * pitch;
    for (int b = 0; b <= steps; ++b) {
      const cd t(x, center.imag() - half + b * pitch);
      Candidate c{delta0_objective(lambda1, lambda2, t), t};
      if (top.size() < kRefineStarts || better(c, top.back())) {
        top.insert(std::upper_bound(top.begin(), top.end(), c, better), c);
        if (top.size() > kRefineStarts) top.pop_back();
      }
    }
  }

  Candidate best = top.front();
  const double xtol = 1e-8 * diameter;
  for (const Candidate& start : top) {
    Candidate refined = nelder_mead(lambda1, lambda2, start.t, pitch, xtol);
    // Re-evaluate so the reported value is exactly the objective at t.
    refined.value = delta0_objective(lambda1, lambda2, refined.t);
    if (better(refined, best)) best = refined;
  }
  // The true supremum never exceeds delta1; the objective evaluated at t can
  // overshoot it by a few ulps.
  return {std::clamp(best.value, 0.0, gap_delta1(lambda1, lambda2)), best.t};
}

double gap_delta_lambda(const ComplexVector& lambda1_tilde, const ComplexVector& lambda2) {
  const double d = gap_delta1(lambda1_tilde, lambda2);
  if (!(d > 0.0)) throw Error(ErrorKind::GapViolated, "perturbed studied set touches the complement spectrum");
  return d;
}

}  // namespace splab
