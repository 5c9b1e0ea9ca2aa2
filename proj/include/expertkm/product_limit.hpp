#pragma once

#include <vector>

#include "expertkm/sample.hpp"
#include "expertkm/step_curve.hpp"

namespace expertkm {

// Product-limit CDF estimate plus the at-risk counts behind each jump.
struct KmCurve {
    StepCurve curve;
    std::vector<long> at_risk;  // n - i + 1 at the first rank of each jump's tie group
    double last_obs = 0.0;

    double evaluate(double t) const { return curve.evaluate(t); }
    double left_limit(double t) const { return curve.left_limit(t); }
    double survival(double t) const { return 1.0 - curve.evaluate(t); }
};

// Product-limit estimator over per-entry weights in [0,1], aligned with the
// sorted sample: 1 - F(t) = prod_{W_{n:i} <= t} (1 - weight_{n:i}/(n-i+1)).
// weights = delta gives the usual Kaplan-Meier curve; the curve is held
// constant beyond the largest observation.
KmCurve km_event(const SortedSample& sample, const std::vector<double>& weights);
KmCurve km_event(const SortedSample& sample);

// Censoring-side product-limit curve (weights 1 - delta).
KmCurve km_censor(const SortedSample& sample);

// Weighted cumulative hazard: increments weight_i / (n (1 - H(W_i -))) with
// tie-consistent at-risk counts shared across a tie group.
StepCurve cumulative_hazard(const SortedSample& sample, const std::vector<double>& weights);

// Inverse-probability-of-censoring form: F(t) = (1/n) sum 1{W_i <= t}
// weight_i / (1 - censor(W_i -)). Agrees with km_event pathwise on tie-free
// binary-weight samples.
StepCurve km_ipcw(const SortedSample& sample, const std::vector<double>& numerator_weights,
                  const KmCurve& censor_curve);

}  // namespace expertkm
