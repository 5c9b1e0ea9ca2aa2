#include "expertkm/quadrature.hpp"

#include <cmath>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
    double integral;
    double error;
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_gauss = wg[3] * fc;
    double result_kronrod = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += wgk[j] * fsum;
        if (j % 2 == 1) result_gauss += wg[j / 2] * fsum;
    }
    result_kronrod *= half;
    result_gauss *= half;
    return {result_kronrod, std::fabs(result_kronrod - result_gauss)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int depth) {
    const RuleResult r = gk15(f, a, b);
    if (r.error <= abs_tol || r.error <= 1e-16 * std::fabs(r.integral)) return r.integral;
    if (depth >= 52)
        throw NumericError("quadrature: refinement stalled (error estimate " +
                           std::to_string(r.error) + ")");
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * abs_tol, depth + 1) +
           integrate_rec(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw ValidationError("quadrature: interval endpoints must be finite");
    if (a == b) return 0.0;
    return integrate_rec(f, a, b, abs_tol, 0);
}

}  // namespace expertkm
