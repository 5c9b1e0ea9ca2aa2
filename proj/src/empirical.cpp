#include "expertkm/empirical.hpp"

#include <cmath>
#include <string>

#include "expertkm/errors.hpp"

namespace expertkm {

StepCurve sub_ecdf(const SortedSample& sample, const std::vector<double>& weights) {
    const std::size_t n = sample.size();
    if (n == 0) throw ValidationError("sub_ecdf: empty sample");
    if (weights.size() != n)
        throw ValidationError("sub_ecdf: expected " + std::to_string(n) + " weights, got " +
                              std::to_string(weights.size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(weights[i]) || weights[i] < 0.0 || weights[i] > 1.0)
            throw ValidationError("sub_ecdf: weight " + std::to_string(i) + " outside [0,1]");
    }

    StepCurve curve;
    double mass = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double t = sample.obs[i].w;
        double group = 0.0;
        while (i < n && sample.obs[i].w == t) group += weights[i++];
        if (group > 0.0) {
            mass += group;
            curve.times.push_back(t);
            curve.values.push_back(mass / static_cast<double>(n));
        }
    }
    return curve;
}

StepCurve ecdf(const SortedSample& sample) {
    if (sample.size() == 0) throw ValidationError("ecdf: empty sample");
    return sub_ecdf(sample, std::vector<double>(sample.size(), 1.0));
}

}  // namespace expertkm
