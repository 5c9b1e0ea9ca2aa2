#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expertkm/kernels.hpp"
#include "expertkm/sample.hpp"

namespace expertkm {

// Cause-specific rates of the contaminated disability scenario:
//   total(t)       = exp(a - b t)
//   contaminant(t) = scale * (exp(a - b t)/8 + exp(a - c t)/4)
//   event(t)       = total(t) - contaminant(t)
// Construction checks that the event rate stays positive on [0, horizon].
struct HazardSpec {
    double a = 0.1;
    double b = 1.5;
    double c = 2.5;
    double horizon = 20.0;
    double contaminant_scale = 1.0;

    explicit HazardSpec(double a_ = 0.1, double b_ = 1.5, double c_ = 2.5, double horizon_ = 20.0,
                        double contaminant_scale_ = 1.0);

    double total_rate(double t) const;
    double contaminant_rate(double t) const;
    double event_rate(double t) const;

    // Closed-form cumulative hazards; accept t = +inf for the total mass.
    double cumulative_total(double t) const;
    double cumulative_contaminant(double t) const;
    double cumulative_event(double t) const;
};

// p(w) = event_rate / total_rate: the probability that a settlement observed
// at w is genuine rather than a contaminant.
double mark_function(const HazardSpec& h, double w);

struct SophNoise {
    double shape1 = 1.0;
    double rate1 = 1.0;
    double shape2 = 1.0;
    double rate2 = 10.0;
    double scale = 1.0;
};

struct ScenarioConfig {
    HazardSpec hazards;
    long n = 1;
    std::uint64_t seed = 1;
    std::optional<double> crude_p0;
    std::optional<SophNoise> soph_noise;
};

void validate_scenario(const ScenarioConfig& cfg);

// Latent draws: X from the event hazard, Y from the contaminant hazard,
// C ~ Uniform(0, horizon); W = X ^ Y ^ C, delta = 1{X ^ Y <= C}. Exhausted
// hazard mass yields +inf latent times. Deterministic given the seed, and
// per-observation draws are order independent.
std::vector<Observation> sample_event_times(const ScenarioConfig& cfg);

// eta_k = delta_k * B_k with B_k | W_k ~ Bernoulli(p0 * p(W_k) + (1 - p0)).
std::vector<double> crude_expert_scenario(const std::vector<Observation>& obs, const HazardSpec& h,
                                          double p0, std::uint64_t seed);

// The hidden-truth judgment eta_k = delta_k * 1{X_k <= Y_k}.
std::vector<double> perfect_crude_judgments(const std::vector<Observation>& obs);

// Truncated-gaussian beliefs for closed observations: location X + scale*V1,
// sd scale*(X + V2) with V1 ~ Gamma(shape1, rate1), V2 ~ Gamma(shape2, rate2).
// Closed observations whose true event time is +inf get an escaping Dirac.
std::vector<std::optional<BeliefKernel>> sophisticated_expert_scenario(
    const std::vector<Observation>& obs, const SophNoise& noise, std::uint64_t seed);

enum class DatasetSchemeKind {
    uniform_reopen,
    top_quantile_reopen,
    proportional_kernel,
    top_quantile_kernel,
};

struct DatasetScheme {
    DatasetSchemeKind kind = DatasetSchemeKind::uniform_reopen;
    double reopen_prob = 0.02;
    double fraction = 0.10;
    double keep = 0.80;
    double location_mult = 1.05;
    double scale_a = 0.1;
    double scale_b = 0.5;
};

DatasetScheme uniform_reopen(double reopen_prob);
DatasetScheme top_quantile_reopen(double fraction, double keep);
DatasetScheme proportional_kernel(double location_mult, double scale_a, double scale_b);
DatasetScheme top_quantile_kernel(double fraction, double location_mult, double scale_a,
                                  double scale_b);

struct ExpertData {
    std::optional<std::vector<double>> judgments;
    std::optional<std::vector<std::optional<BeliefKernel>>> beliefs;
};

// Expert constructions that need no hidden truth, for real-world style data.
ExpertData dataset_expert_scenario(const std::vector<Observation>& obs, const DatasetScheme& scheme,
                                   std::uint64_t seed);

}  // namespace expertkm
