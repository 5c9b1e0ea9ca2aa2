#pragma once

#include <vector>

#include "expertkm/expert.hpp"
#include "expertkm/kernels.hpp"

namespace expertkm {

enum class ExpertMode { crude, sophisticated };
enum class FitMethod { closed_form, numeric };

struct FitResult {
    double estimate = 0.0;     // fitted rate lambda or tail index alpha
    double weight_mass = 0.0;  // numerator weight sum behind the estimate
    FitMethod method = FitMethod::closed_form;
    double residual = 0.0;     // |gradient| at the numeric optimum, 0 for closed forms
};

// Weighted KL projection onto Exponential(lambda):
// lambda = sum(w_i) / sum(w_i m_i) with w_i the IPCW expert weights and m_i
// the observation (crude) or kernel mean (sophisticated).
FitResult fit_exponential_crude(const ExpertSample& sample);
FitResult fit_exponential_sophisticated(const ExpertSample& sample);

// Weighted KL projection onto Pareto(alpha) with known sigma:
// alpha = sum(w_i) / sum(w_i log(W_i / sigma)) (crude) or with the kernel
// log-ratio means (sophisticated).
FitResult fit_pareto(const ExpertSample& sample, double sigma, ExpertMode mode);

// Hill-type tail estimator over the top k order statistics, with numerator
// n (1 - F(W_{n-k:n})) for the matching expert curve.
FitResult fit_hill(const ExpertSample& sample, long k, ExpertMode mode);

struct HillPoint {
    long k = 0;
    double estimate = 0.0;  // NaN when the fit is degenerate at this k
};

std::vector<HillPoint> fit_hill_sweep(const ExpertSample& sample, ExpertMode mode);

// Independent numeric route: assembles the weighted log-likelihood sums via
// quadrature (kernel integrals evaluated numerically, not through the closed
// means) and maximizes by bracket scan, golden-section localization and a
// gradient-sign bisection polish.
FitResult fit_numeric(const ExpertSample& sample, const ParametricModel& model, ExpertMode mode);

// Bracketed argmax of theta -> s1 log(theta) - s2 theta on theta > 0, the
// shape every fitter's objective reduces to. Exposed for oracle tests.
struct LogLinearOptimum {
    double theta = 0.0;
    double residual = 0.0;  // |s1/theta - s2| at the optimum
};
LogLinearOptimum numeric_loglinear_argmax(double s1, double s2);

}  // namespace expertkm
