#include "expertkm/product_limit.hpp"

#include <cmath>
#include <string>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

void check_weights(const SortedSample& sample, const std::vector<double>& weights,
                   const char* where) {
    if (weights.size() != sample.size())
        throw ValidationError(std::string(where) + ": expected " + std::to_string(sample.size()) +
                              " weights, got " + std::to_string(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (std::isnan(weights[i]) || weights[i] < 0.0 || weights[i] > 1.0)
            throw ValidationError(std::string(where) + ": weight " + std::to_string(i) +
                                  " outside [0,1]");
    }
}

}  // namespace

KmCurve km_event(const SortedSample& sample, const std::vector<double>& weights) {
    check_weights(sample, weights, "km_event");
    const std::size_t n = sample.size();

    KmCurve km;
    km.last_obs = sample.max_w();
    double survival = 1.0;
    std::size_t i = 0;
    while (i < n) {
        const double t = sample.obs[i].w;
        const long risk = static_cast<long>(n - i);
        const double before = survival;
        while (i < n && sample.obs[i].w == t) {
            survival *= 1.0 - weights[i] / static_cast<double>(n - i);
            ++i;
        }
        if (survival != before) {
            km.curve.times.push_back(t);
            km.curve.values.push_back(1.0 - survival);
            km.at_risk.push_back(risk);
        }
    }
    return km;
}

KmCurve km_event(const SortedSample& sample) {
    std::vector<double> weights(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
        weights[i] = static_cast<double>(sample.obs[i].delta);
    return km_event(sample, weights);
}

KmCurve km_censor(const SortedSample& sample) {
    std::vector<double> weights(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
        weights[i] = static_cast<double>(1 - sample.obs[i].delta);
    return km_event(sample, weights);
}

StepCurve cumulative_hazard(const SortedSample& sample, const std::vector<double>& weights) {
    check_weights(sample, weights, "cumulative_hazard");
    const std::size_t n = sample.size();

    StepCurve curve;
    double total = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double t = sample.obs[i].w;
        const double risk = static_cast<double>(n - i);  // n (1 - H(t-))
        double group = 0.0;
        while (i < n && sample.obs[i].w == t) group += weights[i++];
        if (group > 0.0) {
            total += group / risk;
            curve.times.push_back(t);
            curve.values.push_back(total);
        }
    }
    return curve;
}

StepCurve km_ipcw(const SortedSample& sample, const std::vector<double>& numerator_weights,
                  const KmCurve& censor_curve) {
    check_weights(sample, numerator_weights, "km_ipcw");
    const std::size_t n = sample.size();

    StepCurve curve;
    double mass = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double t = sample.obs[i].w;
        double group = 0.0;
        while (i < n && sample.obs[i].w == t) {
            const double w = numerator_weights[i];
            if (w > 0.0) {
                const double denom = 1.0 - censor_curve.left_limit(t);
                if (denom <= eps_div)
                    throw NumericError(
                        "km_ipcw: censoring survival at observation " + std::to_string(i) +
                        " (id " + std::to_string(sample.obs[i].id) +
                        ") is below the division guard; the point lies beyond the identifiable "
                        "region");
                group += w / denom;
            }
            ++i;
        }
        if (group > 0.0) {
            mass += group / static_cast<double>(n);
            curve.times.push_back(t);
            curve.values.push_back(mass);
        }
    }
    return curve;
}

}  // namespace expertkm
