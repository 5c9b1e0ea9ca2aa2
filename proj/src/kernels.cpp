#include "expertkm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expertkm/errors.hpp"
#include "expertkm/quadrature.hpp"
#include "expertkm/special.hpp"

namespace expertkm {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_lower(double lower) {
    if (!std::isfinite(lower) || lower < 0.0)
        throw ValidationError("belief kernel: truncation point must be a finite nonneg real");
}

bool escaping(const BeliefKernel& k) { return k.kind == KernelKind::dirac && std::isinf(k.p1); }

// Normalizing mass above `lower` for the truncated Gaussian.
double gaussian_normalizer(const BeliefKernel& k) {
    return normal_sf((k.lower - k.p1) / k.p2);
}

}  // namespace

BeliefKernel dirac_kernel(double atom, double lower) {
    check_lower(lower);
    if (std::isnan(atom) || atom < lower)
        throw ValidationError("dirac kernel: atom must satisfy atom >= lower");
    return {KernelKind::dirac, lower, atom, 0.0};
}

BeliefKernel truncated_gaussian_kernel(double location, double scale, double lower) {
    check_lower(lower);
    if (!std::isfinite(location))
        throw ValidationError("truncated-gaussian kernel: location must be finite");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw ValidationError("truncated-gaussian kernel: scale must be positive");
    BeliefKernel k{KernelKind::truncated_gaussian, lower, location, scale};
    if (gaussian_normalizer(k) < eps_div)
        throw NumericError(
            "truncated-gaussian kernel: degenerate normalizer, essentially no mass above the "
            "truncation point");
    return k;
}

BeliefKernel truncated_gamma_kernel(double shape, double rate, double lower) {
    check_lower(lower);
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw ValidationError("truncated-gamma kernel: shape must be positive");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw ValidationError("truncated-gamma kernel: rate must be positive");
    BeliefKernel k{KernelKind::truncated_gamma, lower, shape, rate};
    if (upper_incomplete_gamma(shape, rate * lower) / std::tgamma(shape) < eps_div)
        throw NumericError(
            "truncated-gamma kernel: degenerate normalizer, essentially no mass above the "
            "truncation point");
    return k;
}

BeliefKernel uniform_kernel(double lower, double upper) {
    check_lower(lower);
    if (!(upper > lower) || !std::isfinite(upper))
        throw ValidationError("uniform kernel: upper bound must exceed lower");
    return {KernelKind::uniform, lower, upper, 0.0};
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::dirac: return "dirac";
        case KernelKind::truncated_gaussian: return "truncated-gaussian";
        case KernelKind::truncated_gamma: return "truncated-gamma";
        case KernelKind::uniform: return "uniform";
    }
    return "unknown";
}

double kernel_cdf(const BeliefKernel& k, double t) {
    if (std::isnan(t)) throw ValidationError("kernel_cdf: t is NaN");
    if (t < k.lower) return 0.0;
    switch (k.kind) {
        case KernelKind::dirac:
            return t >= k.p1 ? 1.0 : 0.0;
        case KernelKind::truncated_gaussian: {
            const double z = (t - k.p1) / k.p2;
            const double mass = 1.0 - normal_sf(z) / gaussian_normalizer(k);
            return std::clamp(mass, 0.0, 1.0);
        }
        case KernelKind::truncated_gamma: {
            if (std::isinf(t)) return 1.0;
            const double num = upper_incomplete_gamma(k.p1, k.p2 * t);
            const double den = upper_incomplete_gamma(k.p1, k.p2 * k.lower);
            return std::clamp(1.0 - num / den, 0.0, 1.0);
        }
        case KernelKind::uniform:
            return std::clamp((t - k.lower) / (k.p1 - k.lower), 0.0, 1.0);
    }
    return 0.0;
}

double kernel_mean(const BeliefKernel& k) {
    switch (k.kind) {
        case KernelKind::dirac:
            return k.p1;
        case KernelKind::truncated_gaussian: {
            const double z0 = (k.lower - k.p1) / k.p2;
            return k.p1 + k.p2 * normal_pdf(z0) / gaussian_normalizer(k);
        }
        case KernelKind::truncated_gamma: {
            const double x = k.p2 * k.lower;
            return upper_incomplete_gamma(k.p1 + 1.0, x) /
                   (k.p2 * upper_incomplete_gamma(k.p1, x));
        }
        case KernelKind::uniform:
            return 0.5 * (k.lower + k.p1);
    }
    return 0.0;
}

double kernel_pdf(const BeliefKernel& k, double t) {
    if (t < k.lower) return 0.0;
    switch (k.kind) {
        case KernelKind::dirac:
            throw ValidationError("kernel_pdf: dirac kernels have no density");
        case KernelKind::truncated_gaussian:
            return normal_pdf((t - k.p1) / k.p2) / (k.p2 * gaussian_normalizer(k));
        case KernelKind::truncated_gamma: {
            const double log_norm = std::log(upper_incomplete_gamma(k.p1, k.p2 * k.lower));
            if (t == 0.0) return k.p1 < 1.0 ? inf : (k.p1 == 1.0 ? k.p2 : 0.0);
            return std::exp(k.p1 * std::log(k.p2) + (k.p1 - 1.0) * std::log(t) - k.p2 * t -
                            log_norm);
        }
        case KernelKind::uniform:
            return t <= k.p1 ? 1.0 / (k.p1 - k.lower) : 0.0;
    }
    return 0.0;
}

double kernel_quadrature_upper(const BeliefKernel& k, double tail_mass) {
    switch (k.kind) {
        case KernelKind::dirac:
            return k.p1;
        case KernelKind::truncated_gaussian: {
            double u = std::max(k.lower, k.p1);
            const double norm = gaussian_normalizer(k);
            while (normal_sf((u - k.p1) / k.p2) / norm >= tail_mass) u += k.p2;
            return u;
        }
        case KernelKind::truncated_gamma: {
            const double norm = upper_incomplete_gamma(k.p1, k.p2 * k.lower);
            double u = std::max({k.lower, (k.p1 + 10.0 * std::sqrt(k.p1)) / k.p2, 1.0 / k.p2});
            while (upper_incomplete_gamma(k.p1, k.p2 * u) / norm >= tail_mass)
                u = k.lower + 2.0 * (u - k.lower) + 1.0;
            return u;
        }
        case KernelKind::uniform:
            return k.p1;
    }
    return k.lower;
}

double kernel_log_ratio_mean(const BeliefKernel& k, double ref) {
    if (!(ref > 0.0) || !std::isfinite(ref))
        throw ValidationError("kernel_log_ratio_mean: ref must be a positive real");
    if (k.lower < ref)
        throw ValidationError("kernel_log_ratio_mean: kernel places mass below the threshold");
    switch (k.kind) {
        case KernelKind::dirac:
            if (std::isinf(k.p1))
                throw NumericError(
                    "kernel_log_ratio_mean: integral diverges for an escaping belief");
            return std::log(k.p1 / ref);
        case KernelKind::uniform: {
            // (1/(u-l)) * integral of log(t/ref): antiderivative t (log(t/ref) - 1).
            const double u = k.p1, l = k.lower;
            return (u * (std::log(u / ref) - 1.0) - l * (std::log(l / ref) - 1.0)) / (u - l);
        }
        default: {
            const double upper = kernel_quadrature_upper(k);
            return integrate([&](double t) { return std::log(t / ref) * kernel_pdf(k, t); },
                             k.lower, upper, 1e-10);
        }
    }
}

double expected_log_density(const BeliefKernel& k, const ParametricModel& model, double theta,
                            EvalRoute route) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw ValidationError("expected_log_density: parameter must be a positive real");
    if (escaping(k))
        throw NumericError("expected_log_density: integral diverges for an escaping belief");

    if (model.family == ModelFamily::exponential) {
        if (route == EvalRoute::closed_form)
            return std::log(theta) - theta * kernel_mean(k);
        if (k.kind == KernelKind::dirac) return std::log(theta) - theta * k.p1;
        const double upper = kernel_quadrature_upper(k);
        return integrate(
            [&](double t) { return (std::log(theta) - theta * t) * kernel_pdf(k, t); }, k.lower,
            upper, 1e-10);
    }

    // Pareto with known sigma: log f = log(alpha) - log(sigma) - (alpha+1) log(t/sigma).
    const double sigma = model.sigma;
    if (!(sigma > 0.0)) throw ValidationError("expected_log_density: pareto sigma must be > 0");
    if (k.lower < sigma || (k.kind == KernelKind::dirac && k.p1 < sigma))
        throw ValidationError("expected_log_density: kernel places mass below pareto sigma");
    const double head = std::log(theta) - std::log(sigma);
    if (route == EvalRoute::closed_form || k.kind == KernelKind::dirac ||
        k.kind == KernelKind::uniform)
        return head - (theta + 1.0) * kernel_log_ratio_mean(k, sigma);
    const double upper = kernel_quadrature_upper(k);
    return integrate(
        [&](double t) {
            return (head - (theta + 1.0) * std::log(t / sigma)) * kernel_pdf(k, t);
        },
        k.lower, upper, 1e-10);
}

}  // namespace expertkm
