#include "expertkm/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

bool valid_extended(double v) { return !std::isnan(v) && v >= 0.0; }

}  // namespace

void validate_observation(const Observation& o, std::size_t index) {
    const std::string at = "observation " + std::to_string(index);
    if (!(o.w >= 0.0) || !std::isfinite(o.w))
        throw ValidationError(at + ": w must be a finite nonnegative real");
    if (o.delta != 0 && o.delta != 1)
        throw ValidationError(at + ": delta must be 0 or 1");
    if (o.eta) {
        if (std::isnan(*o.eta) || *o.eta < 0.0 || *o.eta > 1.0)
            throw ValidationError(at + ": eta must lie in [0,1]");
        if (o.delta == 0 && *o.eta != 0.0)
            throw ValidationError(at + ": open claim (delta = 0) cannot carry eta > 0");
    }
    if (o.x_true && !valid_extended(*o.x_true))
        throw ValidationError(at + ": x_true must be a nonnegative extended real");
    if (o.y_true && !valid_extended(*o.y_true))
        throw ValidationError(at + ": y_true must be a nonnegative extended real");
    if (o.c_true && !valid_extended(*o.c_true))
        throw ValidationError(at + ": c_true must be a nonnegative extended real");
    if (o.x_true && o.y_true && o.c_true) {
        const double m = std::min({*o.x_true, *o.y_true, *o.c_true});
        if (o.w != m)
            throw ValidationError(at + ": w must equal min(x_true, y_true, c_true)");
        const int d = std::min(*o.x_true, *o.y_true) <= *o.c_true ? 1 : 0;
        if (o.delta != d)
            throw ValidationError(at + ": delta must equal 1{min(x_true, y_true) <= c_true}");
    }
}

SortedSample sort_sample(const std::vector<Observation>& sample, SortDirection direction) {
    for (std::size_t i = 0; i < sample.size(); ++i) validate_observation(sample[i], i);

    SortedSample out;
    out.direction = direction;
    out.order.resize(sample.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    // Both directions share one physical ordering: within ties delta = 1
    // entries come first (on the censoring side these are the 1-delta = 0
    // entries, which the convention also puts first).
    std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        if (sample[a].w != sample[b].w) return sample[a].w < sample[b].w;
        return sample[a].delta > sample[b].delta;
    });

    out.obs.reserve(sample.size());
    out.tie_rank.reserve(sample.size());
    for (std::size_t i = 0; i < out.order.size(); ++i) {
        out.obs.push_back(sample[out.order[i]]);
        out.tie_rank.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

}  // namespace expertkm
