#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "hashpeak/error.hpp"

namespace hashpeak {

struct ScalarMinResult {
  double x = 0.0;
  double fx = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Golden-section minimization on [lo, hi]. Finds the minimum of a unimodal
/// function to within x_tol; on multimodal functions it converges to some
/// local minimum, so callers bracket first.
template <typename F>
ScalarMinResult golden_section_min(F&& f, double lo, double hi, double x_tol) {
  if (!(hi > lo)) throw Error("golden_section_min: empty interval");
  if (!(x_tol > 0.0)) throw Error("golden_section_min: x_tol must be positive");
  constexpr double invphi = 0.6180339887498949;

  ScalarMinResult res;
  double a = lo;
  double b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  res.evaluations = 2;

  while (b - a > x_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    ++res.evaluations;
  }
  if (f1 < f2) {
    res.x = x1;
    res.fx = f1;
  } else {
    res.x = x2;
    res.fx = f2;
  }
  res.converged = true;
  return res;
}

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double spread_tol = 1e-6;
  int max_iterations = 500;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  long evaluations = 0;
  bool converged = false;
  int iterations = 0;
};

/// Downhill-simplex minimization from an explicit initial simplex of n+1
/// vertices in n dimensions. Fully deterministic: ties in the vertex ordering
/// resolve by insertion order (stable sort), so repeated runs are identical.
template <typename F>
NelderMeadResult nelder_mead_min(F&& f, std::vector<std::vector<double>> simplex,
                                 const NelderMeadOptions& opts = {}) {
  const std::size_t n = simplex.empty() ? 0 : simplex.front().size();
  if (n == 0 || simplex.size() != n + 1) {
    throw Error("nelder_mead_min: need n+1 vertices of dimension n");
  }

  NelderMeadResult res;
  std::vector<double> fv(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    fv[i] = f(simplex[i]);
    ++res.evaluations;
  }
  std::vector<std::size_t> order(simplex.size());

  const auto reorder = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    reorder();
    res.iterations = iter;
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];
    if (fv[worst] - fv[best] < opts.spread_tol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i : order) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) {
        x[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
      }
      return x;
    };

    const std::vector<double> xr = blend(-opts.reflection);
    const double fr = f(xr);
    ++res.evaluations;

    if (fr < fv[best]) {
      const std::vector<double> xe = blend(-opts.reflection * opts.expansion);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second_worst]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }

    const bool outside = fr < fv[worst];
    const std::vector<double> xc =
        blend(outside ? -opts.reflection * opts.contraction : opts.contraction);
    const double fc = f(xc);
    ++res.evaluations;
    if ((outside && fc <= fr) || (!outside && fc < fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }

    for (std::size_t i : order) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) {
        simplex[i][d] = simplex[best][d] + opts.shrink * (simplex[i][d] - simplex[best][d]);
      }
      fv[i] = f(simplex[i]);
      ++res.evaluations;
    }
  }

  reorder();
  res.x = simplex[order.front()];
  res.fx = fv[order.front()];
  return res;
}

}  // namespace hashpeak
