#include "expertkm/step_curve.hpp"

#include <algorithm>

#include "expertkm/errors.hpp"

namespace expertkm {

double StepCurve::evaluate(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return initial;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

double StepCurve::left_limit(double t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return initial;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

void check_distribution_curve(const StepCurve& curve) {
    if (curve.initial < 0.0 || curve.initial > 1.0)
        throw ValidationError("distribution curve: initial value outside [0,1]");
    double prev = curve.initial;
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        double v = curve.values[i];
        if (v < prev || v > 1.0)
            throw ValidationError("distribution curve: values must be nondecreasing in [0,1]");
        if (i > 0 && !(curve.times[i] > curve.times[i - 1]))
            throw ValidationError("distribution curve: jump times must be strictly increasing");
        prev = v;
    }
}

}  // namespace expertkm
