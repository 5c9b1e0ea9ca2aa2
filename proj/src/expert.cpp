#include "expertkm/expert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

std::vector<double> judgments_or_throw(const ExpertSample& sample, const char* where) {
    if (!sample.judgments)
        throw ValidationError(std::string(where) + ": crude expert judgments are not attached");
    return *sample.judgments;
}

void check_judgments(const SortedSample& base, const std::vector<double>& eta) {
    if (eta.size() != base.size())
        throw ValidationError("expert sample: judgment count does not match sample size");
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (std::isnan(eta[i]) || eta[i] < 0.0 || eta[i] > 1.0)
            throw ValidationError("expert sample: judgment " + std::to_string(i) +
                                  " outside [0,1]");
        if (base.obs[i].delta == 0 && eta[i] != 0.0)
            throw ValidationError("expert sample: judgment " + std::to_string(i) +
                                  " is positive on an open claim");
    }
}

void check_beliefs(const SortedSample& base,
                   const std::vector<std::optional<BeliefKernel>>& beliefs) {
    if (beliefs.size() != base.size())
        throw ValidationError("expert sample: belief count does not match sample size");
    for (std::size_t i = 0; i < beliefs.size(); ++i) {
        if (!beliefs[i]) continue;
        if (base.obs[i].delta == 0)
            throw ValidationError("expert sample: belief attached to open claim " +
                                  std::to_string(i));
        if (beliefs[i]->lower < base.obs[i].w)
            throw ValidationError("expert sample: belief " + std::to_string(i) +
                                  " places mass below its observation");
    }
}

}  // namespace

ExpertSample with_judgments(SortedSample base) {
    std::vector<double> eta(base.size(), 0.0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Observation& o = base.obs[i];
        if (o.delta == 1) {
            if (!o.eta)
                throw ValidationError("expert sample: observation " + std::to_string(i) + " (id " +
                                      std::to_string(o.id) +
                                      ") is closed but carries no judgment");
            eta[i] = *o.eta;
        }
    }
    check_judgments(base, eta);
    return {std::move(base), std::move(eta), std::nullopt};
}

ExpertSample with_judgments(SortedSample base, const std::vector<double>& eta) {
    if (eta.size() != base.size())
        throw ValidationError("expert sample: judgment count does not match sample size");
    std::vector<double> sorted(eta.size());
    for (std::size_t i = 0; i < base.size(); ++i) sorted[i] = eta[base.order[i]];
    check_judgments(base, sorted);
    return {std::move(base), std::move(sorted), std::nullopt};
}

ExpertSample with_beliefs(SortedSample base,
                          const std::vector<std::optional<BeliefKernel>>& beliefs) {
    if (beliefs.size() != base.size())
        throw ValidationError("expert sample: belief count does not match sample size");
    std::vector<std::optional<BeliefKernel>> sorted(beliefs.size());
    for (std::size_t i = 0; i < base.size(); ++i) sorted[i] = beliefs[base.order[i]];
    check_beliefs(base, sorted);
    return {std::move(base), std::nullopt, std::move(sorted)};
}

KmCurve crude_km(const ExpertSample& sample) {
    return km_event(sample.base, judgments_or_throw(sample, "crude_km"));
}

StepCurve crude_km_ipcw(const ExpertSample& sample) {
    const std::vector<double> eta = judgments_or_throw(sample, "crude_km_ipcw");
    std::vector<double> complement(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) complement[i] = 1.0 - eta[i];
    return km_ipcw(sample.base, eta, km_event(sample.base, complement));
}

double MixtureCurve::evaluate(double t) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < coefs.size(); ++i) sum += coefs[i] * kernel_cdf(kernels[i], t);
    return sum;
}

double MixtureCurve::total_mass() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < coefs.size(); ++i) {
        if (!(kernels[i].kind == KernelKind::dirac && std::isinf(kernels[i].p1)))
            sum += coefs[i];
    }
    return sum;
}

MixtureCurve sophisticated_km(const ExpertSample& sample) {
    if (!sample.beliefs)
        throw ValidationError("sophisticated_km: belief kernels are not attached");
    const auto& beliefs = *sample.beliefs;
    const std::size_t n = sample.size();
    const KmCurve censor = km_censor(sample.base);

    MixtureCurve mix;
    for (std::size_t i = 0; i < n; ++i) {
        const Observation& o = sample.base.obs[i];
        if (o.delta == 0) continue;
        if (!beliefs[i])
            throw ValidationError("sophisticated_km: observation " + std::to_string(i) + " (id " +
                                  std::to_string(o.id) + ") is closed but carries no belief");
        const double denom = 1.0 - censor.left_limit(o.w);
        if (denom <= eps_div)
            throw NumericError("sophisticated_km: censoring survival at observation " +
                               std::to_string(i) + " (id " + std::to_string(o.id) +
                               ") is below the division guard");
        mix.coefs.push_back(1.0 / (static_cast<double>(n) * denom));
        mix.kernels.push_back(*beliefs[i]);
    }
    return mix;
}

StepCurve oracle_km(const SortedSample& sample) {
    const std::size_t n = sample.size();
    const KmCurve censor = km_censor(sample);

    // IPCW-weighted atoms at the true event times of closed claims.
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t i = 0; i < n; ++i) {
        const Observation& o = sample.obs[i];
        if (o.delta == 0) continue;
        if (!o.x_true)
            throw ValidationError("oracle_km: observation " + std::to_string(i) + " (id " +
                                  std::to_string(o.id) +
                                  ") is closed but carries no hidden x_true");
        const double denom = 1.0 - censor.left_limit(o.w);
        if (denom <= eps_div)
            throw NumericError("oracle_km: censoring survival at observation " +
                               std::to_string(i) + " (id " + std::to_string(o.id) +
                               ") is below the division guard");
        if (std::isinf(*o.x_true)) continue;  // never settles: no mass at finite t
        atoms.emplace_back(*o.x_true, 1.0 / (static_cast<double>(n) * denom));
    }
    std::sort(atoms.begin(), atoms.end());

    StepCurve curve;
    double mass = 0.0;
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double t = atoms[i].first;
        double group = 0.0;
        while (i < atoms.size() && atoms[i].first == t) group += atoms[i++].second;
        mass += group;
        curve.times.push_back(t);
        curve.values.push_back(mass);
    }
    return curve;
}

StepCurve oracle_km(const ExpertSample& sample) { return oracle_km(sample.base); }

std::vector<double> default_grid(const SortedSample& sample, std::size_t equispaced) {
    std::vector<double> grid;
    const double upper = sample.max_w();
    if (equispaced >= 2) {
        for (std::size_t i = 0; i < equispaced; ++i)
            grid.push_back(upper * static_cast<double>(i) / static_cast<double>(equispaced - 1));
    }
    for (const Observation& o : sample.obs) grid.push_back(o.w);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace expertkm
