#pragma once

#include <optional>
#include <vector>

#include "expertkm/kernels.hpp"
#include "expertkm/product_limit.hpp"
#include "expertkm/sample.hpp"
#include "expertkm/step_curve.hpp"

namespace expertkm {

// Sorted sample plus expert information, aligned with the sorted order.
// Exactly one of judgments/beliefs is present per estimator invocation.
struct ExpertSample {
    SortedSample base;
    std::optional<std::vector<double>> judgments;                     // eta in [0,1]
    std::optional<std::vector<std::optional<BeliefKernel>>> beliefs;  // delta = 1 entries only

    std::size_t size() const { return base.size(); }
};

// Judgments read off the observations' eta fields (delta = 1 entries must
// carry one; delta = 0 entries default to 0).
ExpertSample with_judgments(SortedSample base);
// Judgments supplied in pre-sort order.
ExpertSample with_judgments(SortedSample base, const std::vector<double>& eta);
// Belief kernels supplied in pre-sort order (entries for delta = 0 may be empty).
ExpertSample with_beliefs(SortedSample base,
                          const std::vector<std::optional<BeliefKernel>>& beliefs);

// Crude expert product-limit estimator: km_event with weights eta.
KmCurve crude_km(const ExpertSample& sample);

// IPCW form of the crude estimator, with the censoring-side curve built from
// weights 1 - eta. Cross-check route; equal to crude_km pathwise only for
// binary eta on tie-free samples.
StepCurve crude_km_ipcw(const ExpertSample& sample);

// IPCW mixture over belief kernels. Not a step function, so it keeps exact
// evaluation and a grid exporter instead of a StepCurve representation.
struct MixtureCurve {
    std::vector<double> coefs;  // delta_i / (n (1 - G(W_i -)))
    std::vector<BeliefKernel> kernels;

    double evaluate(double t) const;
    double total_mass() const;  // limit at infinity of the non-escaping part
};

MixtureCurve sophisticated_km(const ExpertSample& sample);

// Oracle estimator: IPCW sum of 1{x_true <= t} over delta = 1 observations.
StepCurve oracle_km(const SortedSample& sample);
StepCurve oracle_km(const ExpertSample& sample);

// Default export grid: union of the observed w values and `equispaced`
// equally spaced points on [0, max w].
std::vector<double> default_grid(const SortedSample& sample, std::size_t equispaced = 512);

}  // namespace expertkm
