#pragma once

#include <cstddef>
#include <vector>

namespace expertkm {

// Right-continuous step function. Worth `initial` on [0, times[0]) and
// values[i] on [times[i], times[i+1]).
struct StepCurve {
    std::vector<double> times;   // strictly increasing jump locations
    std::vector<double> values;  // value attained at each jump
    double initial = 0.0;

    double evaluate(double t) const;
    double left_limit(double t) const;
    double last_value() const { return values.empty() ? initial : values.back(); }
    std::size_t size() const { return times.size(); }
};

// Throws ValidationError unless the curve is a valid sub-distribution:
// nondecreasing with all values in [0,1].
void check_distribution_curve(const StepCurve& curve);

}  // namespace expertkm
