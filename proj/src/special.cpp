#include "expertkm/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

constexpr double rel_eps = 1e-15;
constexpr int max_iter = 600;

// Lower series: gamma(s,x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n)).
double lower_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n <= max_iter; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * rel_eps)
            return std::exp(-x + s * std::log(x)) * sum;
    }
    throw NumericError("upper_incomplete_gamma: series did not converge");
}

// Continued fraction for the upper integral (modified Lentz).
double upper_fraction(double s, double x) {
    constexpr double fpmin = std::numeric_limits<double>::min() / rel_eps;
    double b = x + 1.0 - s;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < rel_eps)
            return std::exp(-x + s * std::log(x)) * h;
    }
    throw NumericError("upper_incomplete_gamma: continued fraction did not converge");
}

}  // namespace

double upper_incomplete_gamma(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw ValidationError("upper_incomplete_gamma: s must be a positive real");
    if (std::isnan(x) || x < 0.0)
        throw ValidationError("upper_incomplete_gamma: x must be nonnegative");
    if (s > 170.0)
        throw NumericError("upper_incomplete_gamma: s = " + std::to_string(s) +
                           " overflows the gamma factor");
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0) return std::tgamma(s) - lower_series(s, x);
    return upper_fraction(s, x);
}

double normal_pdf(double z) {
    static const double inv_sqrt_2pi = 0.398942280401432677939946;
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

double normal_sf(double z) { return 0.5 * std::erfc(z * 0.7071067811865475244); }

}  // namespace expertkm
