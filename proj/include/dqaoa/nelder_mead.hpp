#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dqaoa {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Downhill simplex minimisation with a hard cap on objective evaluations.
///
/// The initial simplex is x0 plus one vertex per coordinate offset by step[k]. Stops when the
/// budget is spent or the spread of simplex values falls below `ftol`.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             std::span<const double> step, int max_evaluations, double ftol = 1e-12);

}  // namespace dqaoa
