#include "dqaoa/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dqaoa/error.hpp"

namespace dqaoa {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             std::span<const double> step, int max_evaluations, double ftol) {
  const std::size_t n = x0.size();
  if (step.size() != n) throw InputError("step size vector must match the dimension");
  if (max_evaluations < 1) throw InputError("evaluation budget must be positive");

  NelderMeadResult best{x0, std::numeric_limits<double>::infinity(), 0};
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++best.evaluations;
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
    return v;
  };
  auto exhausted = [&] { return best.evaluations >= max_evaluations; };

  std::vector<std::vector<double>> simplex{x0};
  std::vector<double> values{eval(x0)};
  for (std::size_t k = 0; k < n && !exhausted(); ++k) {
    auto v = x0;
    v[k] += step[k];
    simplex.push_back(v);
    values.push_back(eval(v));
  }
  if (simplex.size() < n + 1) return best;

  std::vector<std::size_t> order(n + 1);
  while (!exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
    if (std::abs(values[hi] - values[lo]) <= ftol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v <= n; ++v)
      if (v != hi)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v][k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
      return x;
    };

    auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < values[lo]) {
      if (exhausted()) break;
      auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[hi] = std::move(xe);
        values[hi] = fe;
      } else {
        simplex[hi] = std::move(xr);
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[hi] = std::move(xr);
      values[hi] = fr;
      continue;
    }
    if (exhausted()) break;
    const bool outside = fr < values[hi];
    auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[hi])) {
      simplex[hi] = std::move(xc);
      values[hi] = fc;
      continue;
    }
    for (std::size_t v = 0; v <= n && !exhausted(); ++v) {
      if (v == lo) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[v][k] = simplex[lo][k] + 0.5 * (simplex[v][k] - simplex[lo][k]);
      values[v] = eval(simplex[v]);
    }
  }
  return best;
}

}  // namespace dqaoa
