#include "expertkm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "expertkm/errors.hpp"
#include "expertkm/rng.hpp"

namespace expertkm {

namespace {

constexpr double inf_v = std::numeric_limits<double>::infinity();

void require_time(double t, const char* what) {
    if (std::isnan(t) || t < 0.0)
        throw ValidationError(std::string(what) + ": time must be nonnegative");
}

// Invert a monotone cumulative hazard by bisection to |t - t*| <= 1e-12.
double invert_cumulative_hazard(const HazardSpec& h, double (HazardSpec::*lambda)(double) const,
                                double e) {
    const double mass = (h.*lambda)(inf_v);
    if (e >= mass) return inf_v;
    if (e <= 0.0) return 0.0;
    double hi = 1.0;
    for (int guard = 0; (h.*lambda)(hi) < e; ++guard) {
        if (guard > 64) return inf_v;
        hi *= 2.0;
    }
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        ((h.*lambda)(mid) < e ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

HazardSpec::HazardSpec(double a_, double b_, double c_, double horizon_, double contaminant_scale_)
    : a(a_), b(b_), c(c_), horizon(horizon_), contaminant_scale(contaminant_scale_) {
    if (!std::isfinite(a)) throw ValidationError("HazardSpec: a must be finite");
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("HazardSpec: b must be positive");
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("HazardSpec: c must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ValidationError("HazardSpec: horizon must be positive");
    if (contaminant_scale < 0.0 || !std::isfinite(contaminant_scale))
        throw ValidationError("HazardSpec: contaminant scale must be nonnegative");
    constexpr int grid = 2048;
    for (int i = 0; i <= grid; ++i) {
        const double t = horizon * static_cast<double>(i) / grid;
        if (!(event_rate(t) > 0.0))
            throw ValidationError("HazardSpec: event rate must stay positive on [0, horizon], "
                                  "violated at t = " + std::to_string(t));
    }
}

double HazardSpec::total_rate(double t) const { return std::exp(a - b * t); }

double HazardSpec::contaminant_rate(double t) const {
    return contaminant_scale * (std::exp(a - b * t) / 8.0 + std::exp(a - c * t) / 4.0);
}

double HazardSpec::event_rate(double t) const { return total_rate(t) - contaminant_rate(t); }

double HazardSpec::cumulative_total(double t) const {
    require_time(t, "cumulative_total");
    if (std::isinf(t)) return std::exp(a) / b;
    return std::exp(a) * -std::expm1(-b * t) / b;
}

double HazardSpec::cumulative_contaminant(double t) const {
    require_time(t, "cumulative_contaminant");
    if (std::isinf(t)) return contaminant_scale * std::exp(a) * (1.0 / (8.0 * b) + 1.0 / (4.0 * c));
    return contaminant_scale * std::exp(a) *
           (-std::expm1(-b * t) / (8.0 * b) + -std::expm1(-c * t) / (4.0 * c));
}

double HazardSpec::cumulative_event(double t) const {
    return cumulative_total(t) - cumulative_contaminant(t);
}

double mark_function(const HazardSpec& h, double w) {
    if (std::isnan(w) || w < 0.0 || w > h.horizon)
        throw ValidationError("mark_function: w must lie in [0, horizon]");
    return h.event_rate(w) / h.total_rate(w);
}

void validate_scenario(const ScenarioConfig& cfg) {
    if (cfg.n < 1) throw ValidationError("scenario: n must be at least 1");
    if (cfg.crude_p0 && cfg.soph_noise)
        throw ValidationError("scenario: at most one expert scheme may be active");
    if (cfg.crude_p0 && (!(*cfg.crude_p0 >= 0.0) || !(*cfg.crude_p0 <= 1.0)))
        throw ValidationError("scenario: crude effectiveness p0 must lie in [0, 1]");
    if (cfg.soph_noise) {
        const SophNoise& s = *cfg.soph_noise;
        for (double v : {s.shape1, s.rate1, s.shape2, s.rate2, s.scale})
            if (!(v > 0.0) || !std::isfinite(v))
                throw ValidationError("scenario: noise parameters must be positive and finite");
    }
}

std::vector<Observation> sample_event_times(const ScenarioConfig& cfg) {
    validate_scenario(cfg);
    std::vector<Observation> out;
    out.reserve(static_cast<std::size_t>(cfg.n));
    for (long i = 0; i < cfg.n; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const double ex = rng::exponential(cfg.seed, rng::stream_event, idx);
        const double ey = rng::exponential(cfg.seed, rng::stream_contaminant, idx);
        const double x = invert_cumulative_hazard(cfg.hazards, &HazardSpec::cumulative_event, ex);
        const double y =
            invert_cumulative_hazard(cfg.hazards, &HazardSpec::cumulative_contaminant, ey);
        const double c =
            cfg.hazards.horizon * rng::uniform(cfg.seed, rng::stream_censor, idx);
        const double w = std::min(std::min(x, y), c);
        const int delta = std::min(x, y) <= c ? 1 : 0;
        out.push_back({i + 1, w, delta, std::nullopt, x, y, c});
    }
    return out;
}

std::vector<double> crude_expert_scenario(const std::vector<Observation>& obs, const HazardSpec& h,
                                          double p0, std::uint64_t seed) {
    if (!(p0 >= 0.0) || !(p0 <= 1.0))
        throw ValidationError("crude_expert_scenario: p0 must lie in [0, 1]");
    std::vector<double> eta(obs.size(), 0.0);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i].delta == 0) continue;
        const double prob = p0 * mark_function(h, obs[i].w) + (1.0 - p0);
        eta[i] = rng::uniform(seed, rng::stream_bernoulli, i) < prob ? 1.0 : 0.0;
    }
    return eta;
}

std::vector<double> perfect_crude_judgments(const std::vector<Observation>& obs) {
    std::vector<double> eta(obs.size(), 0.0);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i].delta == 0) continue;
        if (!obs[i].x_true || !obs[i].y_true)
            throw ValidationError("perfect_crude_judgments: observation " + std::to_string(i) +
                                  " lacks hidden truth");
        eta[i] = *obs[i].x_true <= *obs[i].y_true ? 1.0 : 0.0;
    }
    return eta;
}

std::vector<std::optional<BeliefKernel>> sophisticated_expert_scenario(
    const std::vector<Observation>& obs, const SophNoise& noise, std::uint64_t seed) {
    for (double v : {noise.shape1, noise.rate1, noise.shape2, noise.rate2, noise.scale})
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError("sophisticated_expert_scenario: noise parameters must be "
                                  "positive and finite");
    std::vector<std::optional<BeliefKernel>> beliefs(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i].delta == 0) continue;
        if (!obs[i].x_true)
            throw ValidationError("sophisticated_expert_scenario: observation " +
                                  std::to_string(i) + " lacks x_true");
        const double x = *obs[i].x_true;
        if (std::isinf(x)) {
            beliefs[i] = dirac_kernel(inf_v, obs[i].w);
            continue;
        }
        const double v1 = rng::gamma(seed, rng::stream_noise_location, i, noise.shape1, noise.rate1);
        const double v2 = rng::gamma(seed, rng::stream_noise_scale, i, noise.shape2, noise.rate2);
        beliefs[i] = truncated_gaussian_kernel(x + noise.scale * v1, noise.scale * (x + v2),
                                               obs[i].w);
    }
    return beliefs;
}

DatasetScheme uniform_reopen(double reopen_prob) {
    DatasetScheme s;
    s.kind = DatasetSchemeKind::uniform_reopen;
    s.reopen_prob = reopen_prob;
    return s;
}

DatasetScheme top_quantile_reopen(double fraction, double keep) {
    DatasetScheme s;
    s.kind = DatasetSchemeKind::top_quantile_reopen;
    s.fraction = fraction;
    s.keep = keep;
    return s;
}

DatasetScheme proportional_kernel(double location_mult, double scale_a, double scale_b) {
    DatasetScheme s;
    s.kind = DatasetSchemeKind::proportional_kernel;
    s.location_mult = location_mult;
    s.scale_a = scale_a;
    s.scale_b = scale_b;
    return s;
}

DatasetScheme top_quantile_kernel(double fraction, double location_mult, double scale_a,
                                  double scale_b) {
    DatasetScheme s;
    s.kind = DatasetSchemeKind::top_quantile_kernel;
    s.fraction = fraction;
    s.location_mult = location_mult;
    s.scale_a = scale_a;
    s.scale_b = scale_b;
    return s;
}

namespace {

double empirical_upper_threshold(const std::vector<Observation>& obs, double fraction) {
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw ValidationError("dataset scheme: quantile fraction must lie in (0, 1)");
    std::vector<double> w(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) w[i] = obs[i].w;
    std::sort(w.begin(), w.end());
    const double pos = std::ceil((1.0 - fraction) * static_cast<double>(w.size()));
    const std::size_t idx =
        std::min(w.size() - 1, static_cast<std::size_t>(std::max(1.0, pos)) - 1);
    return w[idx];
}

void check_unit_interval(double v, const char* what) {
    if (!(v >= 0.0) || !(v <= 1.0))
        throw ValidationError(std::string("dataset scheme: ") + what + " must lie in [0, 1]");
}

void check_kernel_params(const DatasetScheme& s) {
    if (!std::isfinite(s.location_mult))
        throw ValidationError("dataset scheme: location multiplier must be finite");
    if (!(s.scale_a > 0.0) || !std::isfinite(s.scale_a) || s.scale_b < 0.0 ||
        !std::isfinite(s.scale_b))
        throw ValidationError("dataset scheme: kernel scale parameters must be valid");
}

}  // namespace

ExpertData dataset_expert_scenario(const std::vector<Observation>& obs, const DatasetScheme& scheme,
                                   std::uint64_t seed) {
    if (obs.empty()) throw ValidationError("dataset_expert_scenario: empty observation list");
    ExpertData out;
    switch (scheme.kind) {
        case DatasetSchemeKind::uniform_reopen: {
            check_unit_interval(scheme.reopen_prob, "reopen probability");
            std::vector<double> eta(obs.size(), 0.0);
            for (std::size_t i = 0; i < obs.size(); ++i) {
                if (obs[i].delta == 0) continue;
                eta[i] =
                    rng::uniform(seed, rng::stream_bernoulli, i) < 1.0 - scheme.reopen_prob ? 1.0
                                                                                            : 0.0;
            }
            out.judgments = std::move(eta);
            return out;
        }
        case DatasetSchemeKind::top_quantile_reopen: {
            check_unit_interval(scheme.keep, "keep probability");
            const double threshold = empirical_upper_threshold(obs, scheme.fraction);
            std::vector<double> eta(obs.size(), 0.0);
            for (std::size_t i = 0; i < obs.size(); ++i) {
                if (obs[i].delta == 0) continue;
                if (obs[i].w > threshold)
                    eta[i] = rng::uniform(seed, rng::stream_bernoulli, i) < scheme.keep ? 1.0 : 0.0;
                else
                    eta[i] = 1.0;
            }
            out.judgments = std::move(eta);
            return out;
        }
        case DatasetSchemeKind::proportional_kernel: {
            check_kernel_params(scheme);
            std::vector<std::optional<BeliefKernel>> beliefs(obs.size());
            for (std::size_t i = 0; i < obs.size(); ++i) {
                if (obs[i].delta == 0) continue;
                beliefs[i] = truncated_gaussian_kernel(
                    scheme.location_mult * obs[i].w, scheme.scale_a + scheme.scale_b * obs[i].w,
                    obs[i].w);
            }
            out.beliefs = std::move(beliefs);
            return out;
        }
        case DatasetSchemeKind::top_quantile_kernel: {
            check_kernel_params(scheme);
            const double threshold = empirical_upper_threshold(obs, scheme.fraction);
            std::vector<std::optional<BeliefKernel>> beliefs(obs.size());
            for (std::size_t i = 0; i < obs.size(); ++i) {
                if (obs[i].delta == 0) continue;
                if (obs[i].w > threshold)
                    beliefs[i] = truncated_gaussian_kernel(
                        scheme.location_mult * obs[i].w,
                        scheme.scale_a + scheme.scale_b * obs[i].w, obs[i].w);
                else
                    beliefs[i] = dirac_kernel(obs[i].w, obs[i].w);
            }
            out.beliefs = std::move(beliefs);
            return out;
        }
    }
    throw ValidationError("dataset_expert_scenario: unknown scheme");
}

}  // namespace expertkm
