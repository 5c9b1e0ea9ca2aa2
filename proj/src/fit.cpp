#include "expertkm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "expertkm/errors.hpp"
#include "expertkm/quadrature.hpp"

namespace expertkm {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// Per-observation IPCW weights for the crude route: eta_i / (1 - L'(W_i -))
// where L' is the censor-side product-limit curve of (W, 1 - eta).
std::vector<double> crude_weights(const ExpertSample& sample) {
    if (!sample.judgments)
        throw ValidationError("fit: crude mode requires expert judgments");
    const std::vector<double>& eta = *sample.judgments;
    std::vector<double> complement(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) complement[i] = 1.0 - eta[i];
    const KmCurve censor = km_event(sample.base, complement);

    std::vector<double> weights(eta.size(), 0.0);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (eta[i] == 0.0) continue;
        const double denom = 1.0 - censor.left_limit(sample.base.obs[i].w);
        if (denom <= eps_div)
            throw NumericError("fit: censoring survival at observation " + std::to_string(i) +
                               " is below the division guard");
        weights[i] = eta[i] / denom;
    }
    return weights;
}

// delta_i / (1 - G(W_i -)) for the sophisticated route.
std::vector<double> sophisticated_weights(const ExpertSample& sample) {
    if (!sample.beliefs)
        throw ValidationError("fit: sophisticated mode requires belief kernels");
    const KmCurve censor = km_censor(sample.base);
    std::vector<double> weights(sample.size(), 0.0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const Observation& o = sample.base.obs[i];
        if (o.delta == 0) continue;
        if (!(*sample.beliefs)[i])
            throw ValidationError("fit: observation " + std::to_string(i) + " (id " +
                                  std::to_string(o.id) + ") is closed but carries no belief");
        const double denom = 1.0 - censor.left_limit(o.w);
        if (denom <= eps_div)
            throw NumericError("fit: censoring survival at observation " + std::to_string(i) +
                               " is below the division guard");
        weights[i] = 1.0 / denom;
    }
    return weights;
}

FitResult ratio_fit(double s1, double s2, const char* what) {
    if (!(s1 > 0.0))
        throw NumericError(std::string(what) + ": degenerate fit, zero effective weight mass");
    if (!(s2 > 0.0) || !std::isfinite(s2))
        throw NumericError(std::string(what) + ": degenerate fit, weighted denominator " +
                           std::to_string(s2));
    return {s1 / s2, s1, FitMethod::closed_form, 0.0};
}

double kernel_moment(const BeliefKernel& k, const std::function<double(double)>& g) {
    const double upper = kernel_quadrature_upper(k);
    return integrate([&](double t) { return g(t) * kernel_pdf(k, t); }, k.lower, upper, 1e-10);
}

}  // namespace

FitResult fit_exponential_crude(const ExpertSample& sample) {
    const std::vector<double> weights = crude_weights(sample);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        s1 += weights[i];
        s2 += weights[i] * sample.base.obs[i].w;
    }
    return ratio_fit(s1, s2, "fit_exponential_crude");
}

FitResult fit_exponential_sophisticated(const ExpertSample& sample) {
    const std::vector<double> weights = sophisticated_weights(sample);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const double mean = kernel_mean(*(*sample.beliefs)[i]);
        if (std::isinf(mean))
            throw NumericError("fit_exponential_sophisticated: observation " + std::to_string(i) +
                               " carries an escaping belief with infinite mean");
        s1 += weights[i];
        s2 += weights[i] * mean;
    }
    return ratio_fit(s1, s2, "fit_exponential_sophisticated");
}

FitResult fit_pareto(const ExpertSample& sample, double sigma, ExpertMode mode) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ValidationError("fit_pareto: sigma must be a positive real");
    const std::vector<double> weights =
        mode == ExpertMode::crude ? crude_weights(sample) : sophisticated_weights(sample);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const double w = sample.base.obs[i].w;
        if (w <= sigma)
            throw ValidationError("fit_pareto: observation " + std::to_string(i) +
                                  " has positive weight but lies at or below sigma");
        s1 += weights[i];
        s2 += weights[i] * (mode == ExpertMode::crude
                                ? std::log(w / sigma)
                                : kernel_log_ratio_mean(*(*sample.beliefs)[i], sigma));
    }
    return ratio_fit(s1, s2, "fit_pareto");
}

FitResult fit_hill(const ExpertSample& sample, long k, ExpertMode mode) {
    const long n = static_cast<long>(sample.size());
    if (k < 1 || k > n - 1)
        throw ValidationError("fit_hill: k must lie in [1, n-1], got " + std::to_string(k));
    const double threshold = sample.base.obs[static_cast<std::size_t>(n - k - 1)].w;
    if (!(threshold > 0.0))
        throw ValidationError("fit_hill: threshold order statistic W_{n-k:n} must be positive");

    // Accumulate n * survival(threshold) as a telescoping product so the
    // unit-weight uncensored case stays on exact integers and the classical
    // Hill reduction is exact.
    const auto survival_numerator = [&](const std::vector<double>& jumps) {
        double num = static_cast<double>(n);
        for (std::size_t i = 0; i < jumps.size(); ++i) {
            if (sample.base.obs[i].w > threshold) break;
            const double r = static_cast<double>(n) - static_cast<double>(i);
            num = num * (r - jumps[i]) / r;
        }
        return num;
    };

    double numerator = 0.0, denominator = 0.0;
    if (mode == ExpertMode::crude) {
        const std::vector<double> weights = crude_weights(sample);
        numerator = survival_numerator(*sample.judgments);
        for (long j = n - k; j < n; ++j) {
            const auto i = static_cast<std::size_t>(j);
            if (weights[i] == 0.0) continue;
            denominator += std::log(sample.base.obs[i].w / threshold) * weights[i];
        }
    } else {
        const std::vector<double> weights = sophisticated_weights(sample);
        std::vector<double> deltas(sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i)
            deltas[i] = static_cast<double>(sample.base.obs[i].delta);
        numerator = survival_numerator(deltas);
        for (long j = n - k; j < n; ++j) {
            const auto i = static_cast<std::size_t>(j);
            if (weights[i] == 0.0) continue;
            denominator +=
                weights[i] * kernel_log_ratio_mean(*(*sample.beliefs)[i], threshold);
        }
    }
    FitResult out = ratio_fit(numerator, denominator, "fit_hill");
    out.weight_mass = numerator;
    return out;
}

std::vector<HillPoint> fit_hill_sweep(const ExpertSample& sample, ExpertMode mode) {
    const long n = static_cast<long>(sample.size());
    std::vector<HillPoint> table;
    table.reserve(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    for (long k = 1; k <= n - 1; ++k) {
        try {
            table.push_back({k, fit_hill(sample, k, mode).estimate});
        } catch (const NumericError&) {
            table.push_back({k, nan_v});
        }
    }
    return table;
}

LogLinearOptimum numeric_loglinear_argmax(double s1, double s2) {
    if (!(s1 > 0.0) || !(s2 > 0.0) || !std::isfinite(s1) || !std::isfinite(s2))
        throw NumericError("numeric fit: objective has no interior maximum (s1 = " +
                           std::to_string(s1) + ", s2 = " + std::to_string(s2) + ")");
    const auto objective = [&](double theta) { return s1 * std::log(theta) - s2 * theta; };

    // Scan a geometric ladder for a local-maximum triple.
    double lo = 1e-8, hi = 0.0;
    double prev = objective(lo), prev_theta = lo;
    bool bracketed = false;
    for (double theta = 4e-8; theta <= 4e12; theta *= 4.0) {
        const double val = objective(theta);
        if (val < prev) {
            hi = theta;
            lo = prev_theta / 4.0;
            bracketed = true;
            break;
        }
        prev = val;
        prev_theta = theta;
    }
    if (!bracketed)
        throw NumericError(
            "numeric fit: no bracket found, objective still rising at theta = 4e12 (gradient " +
            std::to_string(s1 / 4e12 - s2) + ")");
    lo = std::max(lo, 1e-12);
    const double lo0 = lo, hi0 = hi;

    // Golden-section search on [lo, hi]. Value comparisons go blind once the
    // concave objective flattens within rounding error of its peak, so this
    // only localizes the maximizer.
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 400 && hi - lo > 1e-12 * hi; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        }
    }
    double theta = 0.5 * (lo + hi);

    // Sign bisection of the gradient finishes to the advertised tolerance.
    const auto gradient = [&](double t) { return s1 / t - s2; };
    double blo = lo0, bhi = hi0;
    if (gradient(lo) > 0.0 && gradient(hi) < 0.0) {
        blo = lo;
        bhi = hi;
    }
    for (int it = 0; it < 200 && std::fabs(gradient(theta)) > 1e-9; ++it) {
        if (gradient(theta) > 0.0)
            blo = theta;
        else
            bhi = theta;
        const double mid = 0.5 * (blo + bhi);
        if (mid == blo || mid == bhi) break;
        theta = mid;
    }
    const double residual = std::fabs(gradient(theta));
    if (residual > 1e-9)
        throw NumericError("numeric fit: gradient " + std::to_string(residual) +
                           " above tolerance after golden-section refinement");
    return {theta, residual};
}

FitResult fit_numeric(const ExpertSample& sample, const ParametricModel& model, ExpertMode mode) {
    const bool pareto = model.family == ModelFamily::pareto;
    if (pareto && (!(model.sigma > 0.0) || !std::isfinite(model.sigma)))
        throw ValidationError("fit_numeric: pareto sigma must be a positive real");

    const std::vector<double> weights =
        mode == ExpertMode::crude ? crude_weights(sample) : sophisticated_weights(sample);

    // Assemble the objective's sufficient sums with numerically integrated
    // kernel moments, keeping this route independent of the closed means.
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const double w = sample.base.obs[i].w;
        double moment = 0.0;
        if (mode == ExpertMode::crude) {
            if (pareto && w <= model.sigma)
                throw ValidationError("fit_numeric: observation " + std::to_string(i) +
                                      " has positive weight but lies at or below sigma");
            moment = pareto ? std::log(w / model.sigma) : w;
        } else {
            const BeliefKernel& kern = *(*sample.beliefs)[i];
            if (kern.kind == KernelKind::dirac) {
                if (std::isinf(kern.p1))
                    throw NumericError("fit_numeric: observation " + std::to_string(i) +
                                       " carries an escaping belief");
                if (pareto && kern.p1 < model.sigma)
                    throw ValidationError("fit_numeric: belief " + std::to_string(i) +
                                          " places mass below sigma");
                moment = pareto ? std::log(kern.p1 / model.sigma) : kern.p1;
            } else {
                if (pareto && kern.lower < model.sigma)
                    throw ValidationError("fit_numeric: belief " + std::to_string(i) +
                                          " places mass below sigma");
                moment = pareto ? kernel_moment(
                                      kern, [&](double t) { return std::log(t / model.sigma); })
                                : kernel_moment(kern, [](double t) { return t; });
            }
        }
        s1 += weights[i];
        s2 += weights[i] * moment;
    }

    const LogLinearOptimum opt = numeric_loglinear_argmax(s1, s2);
    return {opt.theta, s1, FitMethod::numeric, opt.residual};
}

}  // namespace expertkm
