#pragma once

#include <string>

namespace expertkm {

enum class KernelKind { dirac, truncated_gaussian, truncated_gamma, uniform };

// Expert belief about one claim's eventual value, a probability law supported
// on [lower, infinity). CDF queries use the closed convention K([lower, t]),
// so a Dirac kernel at W reproduces the indicator 1{W <= t} exactly.
//
// A Dirac kernel with atom = +infinity encodes a claim the expert believes
// never settles: all mass escapes to infinity, the CDF is identically zero
// and the mean is infinite.
struct BeliefKernel {
    KernelKind kind = KernelKind::dirac;
    double lower = 0.0;
    double p1 = 0.0;  // dirac: atom | gaussian: location | gamma: shape | uniform: upper
    double p2 = 0.0;  // gaussian: scale | gamma: rate
};

BeliefKernel dirac_kernel(double atom, double lower);
BeliefKernel truncated_gaussian_kernel(double location, double scale, double lower);
BeliefKernel truncated_gamma_kernel(double shape, double rate, double lower);
BeliefKernel uniform_kernel(double lower, double upper);

std::string kernel_kind_name(KernelKind kind);

// Mass on [lower, t]; zero for t < lower.
double kernel_cdf(const BeliefKernel& k, double t);

double kernel_mean(const BeliefKernel& k);

// Density of the truncated law at t (non-Dirac kernels only).
double kernel_pdf(const BeliefKernel& k, double t);

// Point U >= lower such that the kernel mass above U is < tail_mass.
double kernel_quadrature_upper(const BeliefKernel& k, double tail_mass = 1e-11);

// E[log(t / ref)] under the kernel; closed form for dirac/uniform, adaptive
// quadrature otherwise. Requires lower >= ref > 0.
double kernel_log_ratio_mean(const BeliefKernel& k, double ref);

enum class ModelFamily { exponential, pareto };

struct ParametricModel {
    ModelFamily family = ModelFamily::exponential;
    double sigma = 1.0;  // pareto threshold; ignored for exponential
};

enum class EvalRoute { closed_form, quadrature };

// Integral of log f_theta against the kernel. The closed_form route uses the
// analytic reductions (exponential: log(theta) - theta * mean; pareto via the
// log-ratio mean); the quadrature route integrates the log-density directly
// and exists as an independent cross-check.
double expected_log_density(const BeliefKernel& k, const ParametricModel& model, double theta,
                            EvalRoute route = EvalRoute::closed_form);

}  // namespace expertkm
