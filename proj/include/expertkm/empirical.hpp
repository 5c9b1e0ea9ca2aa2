#pragma once

#include <vector>

#include "expertkm/sample.hpp"
#include "expertkm/step_curve.hpp"

namespace expertkm {

// Empirical CDF of the observed w values: mass 1/n at every entry.
StepCurve ecdf(const SortedSample& sample);

// Weighted sub-distribution: mass weights[i]/n at the i-th sorted entry.
// weights are aligned with the sorted order and must lie in [0,1].
StepCurve sub_ecdf(const SortedSample& sample, const std::vector<double>& weights);

}  // namespace expertkm
