#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "expertkm/errors.hpp"
#include "expertkm/fit.hpp"
#include "expertkm/product_limit.hpp"

using namespace expertkm;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

SortedSample make_sorted(const std::vector<double>& w, const std::vector<int>& delta) {
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < w.size(); ++i)
        obs.push_back({static_cast<std::int64_t>(i + 1), w[i], delta[i], std::nullopt,
                       std::nullopt, std::nullopt, std::nullopt});
    return sort_sample(obs);
}

ExpertSample closed_with_eta_one(const std::vector<double>& w) {
    SortedSample s = make_sorted(w, std::vector<int>(w.size(), 1));
    return with_judgments(s, std::vector<double>(w.size(), 1.0));
}

ExpertSample closed_with_dirac_at(const std::vector<double>& w, const std::vector<double>& atom) {
    SortedSample s = make_sorted(w, std::vector<int>(w.size(), 1));
    std::vector<std::optional<BeliefKernel>> beliefs(w.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        beliefs[s.order[i]] = dirac_kernel(atom[s.order[i]] < s.obs[i].w ? s.obs[i].w
                                                                         : atom[s.order[i]],
                                           s.obs[i].w);
    return with_beliefs(s, beliefs);
}

}  // namespace

TEST_CASE("exponential crude fit hand values") {
    FitResult f = fit_exponential_crude(closed_with_eta_one({1.0, 2.0, 3.0}));
    CHECK(f.estimate == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.weight_mass == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f.method == FitMethod::closed_form);
    CHECK(f.residual == 0.0);

    FitResult single = fit_exponential_crude(closed_with_eta_one({4.0}));
    CHECK(single.estimate == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("exponential crude fit equals the directly computed weighted ratio") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> w;
        std::vector<int> delta;
        double t = 0.0;
        for (int i = 0; i < 25; ++i) {
            t += 0.05 + u(gen);
            w.push_back(t);
            delta.push_back(u(gen) < 0.7 ? 1 : 0);
        }
        SortedSample s = make_sorted(w, delta);
        std::vector<double> eta(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) eta[i] = s.obs[i].delta;
        ExpertSample es = with_judgments(s, eta);

        std::vector<double> complement(eta.size());
        for (std::size_t i = 0; i < eta.size(); ++i) complement[i] = 1.0 - eta[i];
        KmCurve lp = km_event(s, complement);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (eta[i] == 0.0) continue;
            const double wt = eta[i] / (1.0 - lp.left_limit(s.obs[i].w));
            num += wt;
            den += wt * s.obs[i].w;
        }
        FitResult f = fit_exponential_crude(es);
        CHECK(f.estimate == doctest::Approx(num / den).epsilon(1e-13));
        CHECK(f.weight_mass == doctest::Approx(num).epsilon(1e-13));
    }
}

TEST_CASE("exponential sophisticated fit hand values") {
    SortedSample s = make_sorted({0.0}, {1});
    std::vector<std::optional<BeliefKernel>> whole_gamma = {truncated_gamma_kernel(1.0, 1.0, 0.0)};
    FitResult f = fit_exponential_sophisticated(with_beliefs(s, whole_gamma));
    CHECK(f.estimate == doctest::Approx(1.0).epsilon(1e-12));

    FitResult two = fit_exponential_sophisticated(closed_with_dirac_at({1.0, 2.0}, {2.0, 4.0}));
    CHECK(two.estimate == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(two.weight_mass == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("exponential sophisticated fit with atoms at W matches the uncensored rate") {
    std::vector<double> w = {0.4, 1.1, 2.7, 3.3};
    FitResult f = fit_exponential_sophisticated(closed_with_dirac_at(w, w));
    CHECK(f.estimate == doctest::Approx(4.0 / (0.4 + 1.1 + 2.7 + 3.3)).epsilon(1e-14));
}

TEST_CASE("an escaping belief poisons mean-based fits") {
    SortedSample s = make_sorted({1.0, 2.0}, {1, 1});
    std::vector<std::optional<BeliefKernel>> beliefs = {dirac_kernel(1.5, 1.0),
                                                        dirac_kernel(inf, 2.0)};
    ExpertSample es = with_beliefs(s, beliefs);
    CHECK_THROWS_AS(fit_exponential_sophisticated(es), NumericError);
    CHECK_THROWS_AS(fit_numeric(es, {ModelFamily::exponential, 1.0}, ExpertMode::sophisticated),
                    NumericError);
}

TEST_CASE("pareto fit hand values") {
    const double e1 = std::exp(1.0);
    ExpertSample es = closed_with_eta_one({e1, e1 * e1, e1 * e1 * e1});
    FitResult f = fit_pareto(es, 1.0, ExpertMode::crude);
    CHECK(f.estimate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.weight_mass == doctest::Approx(3.0).epsilon(1e-14));

    FitResult one = fit_pareto(closed_with_eta_one({e1 * 2.0}), 2.0, ExpertMode::crude);
    CHECK(one.estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pareto sophisticated fit with dirac atoms at W matches the crude fit") {
    std::vector<double> w = {1.5, 2.25, 4.0, 7.5};
    ExpertSample crude = closed_with_eta_one(w);
    ExpertSample soph = closed_with_dirac_at(w, w);
    FitResult a = fit_pareto(crude, 1.0, ExpertMode::crude);
    FitResult b = fit_pareto(soph, 1.0, ExpertMode::sophisticated);
    CHECK(a.estimate == doctest::Approx(b.estimate).epsilon(1e-13));
}

TEST_CASE("pareto fit domain checks") {
    ExpertSample es = closed_with_eta_one({2.0, 3.0});
    CHECK_THROWS_AS(fit_pareto(es, 0.0, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_pareto(es, -1.0, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_pareto(es, inf, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_pareto(es, 2.0, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_pareto(es, 2.5, ExpertMode::crude), ValidationError);
}

TEST_CASE("hill fit hand values and classical reduction") {
    const double e1 = std::exp(1.0);
    ExpertSample es = closed_with_eta_one({1.0, e1, e1 * e1});
    FitResult f = fit_hill(es, 2, ExpertMode::crude);
    CHECK(f.estimate == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(f.weight_mass == doctest::Approx(2.0).epsilon(1e-14));

    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> w;
        double t = 0.1;
        for (int i = 0; i < 20; ++i) {
            t += 0.05 + u(gen);
            w.push_back(t);
        }
        ExpertSample crude = closed_with_eta_one(w);
        ExpertSample soph = closed_with_dirac_at(w, w);
        const long n = static_cast<long>(w.size());
        for (long k : {1L, 5L, 12L, n - 1}) {
            double denom = 0.0;
            for (long j = n - k; j < n; ++j) denom += std::log(w[j] / w[n - k - 1]);
            const double classical = static_cast<double>(k) / denom;
            CHECK(fit_hill(crude, k, ExpertMode::crude).estimate == classical);
            CHECK(fit_hill(soph, k, ExpertMode::sophisticated).estimate == classical);
        }
    }
}

TEST_CASE("hill fit at k = n - 1 keeps the documented exact relation") {
    std::vector<double> w = {1.0, 2.0, 4.0, 8.0};
    ExpertSample es = closed_with_eta_one(w);
    const long n = 4;
    double denom = 0.0;
    for (std::size_t j = 1; j < w.size(); ++j) denom += std::log(w[j] / w[0]);
    FitResult f = fit_hill(es, n - 1, ExpertMode::crude);
    CHECK(f.estimate == static_cast<double>(n - 1) / denom);
    CHECK_THROWS_AS(fit_pareto(es, w[0], ExpertMode::crude), ValidationError);
}

TEST_CASE("hill fit validates k") {
    ExpertSample es = closed_with_eta_one({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(fit_hill(es, 0, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_hill(es, 3, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_hill(es, -2, ExpertMode::crude), ValidationError);
}

TEST_CASE("hill sweep covers k = 1 .. n-1 and marks degenerate fits") {
    std::vector<double> w;
    for (int i = 1; i <= 40; ++i) w.push_back(std::pow(1.3, i));
    ExpertSample es = closed_with_eta_one(w);
    std::vector<HillPoint> sweep = fit_hill_sweep(es, ExpertMode::crude);
    REQUIRE(sweep.size() == 39);
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        CHECK(sweep[i].k == static_cast<long>(i + 1));
        CHECK(std::isfinite(sweep[i].estimate));
        FitResult direct = fit_hill(es, sweep[i].k, ExpertMode::crude);
        CHECK(sweep[i].estimate == direct.estimate);
    }

    SortedSample s = make_sorted({1.0, 2.0, 3.0}, {1, 1, 1});
    ExpertSample zero = with_judgments(s, {0.0, 0.0, 0.0});
    std::vector<HillPoint> degenerate = fit_hill_sweep(zero, ExpertMode::crude);
    REQUIRE(degenerate.size() == 2);
    for (const auto& p : degenerate) CHECK(std::isnan(p.estimate));
}

TEST_CASE("numeric argmax solves the log-linear objective") {
    LogLinearOptimum o = numeric_loglinear_argmax(3.0, 6.0);
    CHECK(o.theta == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(o.residual <= 1e-9);

    CHECK_THROWS_AS(numeric_loglinear_argmax(0.0, 1.0), NumericError);
    CHECK_THROWS_AS(numeric_loglinear_argmax(-1.0, 1.0), NumericError);
    CHECK_THROWS_AS(numeric_loglinear_argmax(1.0, 0.0), NumericError);
    CHECK_THROWS_AS(numeric_loglinear_argmax(1.0, 1e-30), NumericError);
}

TEST_CASE("fit_numeric agrees with the closed forms") {
    ExpertSample two = closed_with_eta_one({3.0, 3.0});
    FitResult fn = fit_numeric(two, {ModelFamily::exponential, 1.0}, ExpertMode::crude);
    CHECK(fn.estimate == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(fn.method == FitMethod::numeric);
    CHECK(fn.residual <= 1e-9);

    std::mt19937 gen(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<double> w;
        double t = 0.4;
        for (int i = 0; i < 12; ++i) {
            t += 0.1 + u(gen);
            w.push_back(t);
        }
        ExpertSample crude = closed_with_eta_one(w);
        std::vector<double> atom(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) atom[i] = w[i] + u(gen);
        ExpertSample soph = closed_with_dirac_at(w, atom);

        const ParametricModel expm{ModelFamily::exponential, 1.0};
        const ParametricModel parm{ModelFamily::pareto, 0.3};
        CHECK(fit_numeric(crude, expm, ExpertMode::crude).estimate ==
              doctest::Approx(fit_exponential_crude(crude).estimate).epsilon(1e-7));
        CHECK(fit_numeric(crude, parm, ExpertMode::crude).estimate ==
              doctest::Approx(fit_pareto(crude, 0.3, ExpertMode::crude).estimate).epsilon(1e-7));
        CHECK(fit_numeric(soph, expm, ExpertMode::sophisticated).estimate ==
              doctest::Approx(fit_exponential_sophisticated(soph).estimate).epsilon(1e-7));
        CHECK(fit_numeric(soph, parm, ExpertMode::sophisticated).estimate ==
              doctest::Approx(fit_pareto(soph, 0.3, ExpertMode::sophisticated).estimate)
                  .epsilon(1e-7));
    }
}

TEST_CASE("fit_numeric with smooth kernels tracks the closed sophisticated fits") {
    std::mt19937 gen(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> w;
        double t = 0.5;
        for (int i = 0; i < 8; ++i) {
            t += 0.15 + u(gen);
            w.push_back(t);
        }
        SortedSample s = make_sorted(w, std::vector<int>(w.size(), 1));
        std::vector<std::optional<BeliefKernel>> beliefs(w.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double lw = s.obs[i].w;
            beliefs[s.order[i]] = i % 2 == 0
                                      ? truncated_gaussian_kernel(lw + u(gen), 0.2 + u(gen), lw)
                                      : truncated_gamma_kernel(1.5 + 2.0 * u(gen),
                                                               0.4 + u(gen), lw);
        }
        ExpertSample es = with_beliefs(s, beliefs);
        CHECK(fit_numeric(es, {ModelFamily::exponential, 1.0}, ExpertMode::sophisticated)
                  .estimate ==
              doctest::Approx(fit_exponential_sophisticated(es).estimate).epsilon(1e-7));
        CHECK(fit_numeric(es, {ModelFamily::pareto, 0.45}, ExpertMode::sophisticated).estimate ==
              doctest::Approx(fit_pareto(es, 0.45, ExpertMode::sophisticated).estimate)
                  .epsilon(1e-7));
    }
}

TEST_CASE("closed-form fits are scale equivariant") {
    std::vector<double> w = {0.7, 1.9, 2.4, 5.5};
    ExpertSample base = closed_with_eta_one(w);
    FitResult f1 = fit_exponential_crude(base);

    std::vector<double> w2(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) w2[i] = 2.0 * w[i];
    FitResult f2 = fit_exponential_crude(closed_with_eta_one(w2));
    CHECK(f2.estimate == f1.estimate / 2.0);

    const double c = 1.7;
    std::vector<double> wc(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) wc[i] = c * w[i];
    FitResult fc = fit_exponential_crude(closed_with_eta_one(wc));
    CHECK(fc.estimate == doctest::Approx(f1.estimate / c).epsilon(1e-12));

    FitResult p1 = fit_pareto(base, 0.5, ExpertMode::crude);
    FitResult pc = fit_pareto(closed_with_eta_one(wc), 0.5 * c, ExpertMode::crude);
    CHECK(pc.estimate == doctest::Approx(p1.estimate).epsilon(1e-12));
}

TEST_CASE("missing expert attachments are validation errors") {
    SortedSample s = make_sorted({1.0, 2.0}, {1, 1});
    ExpertSample bare;
    bare.base = s;
    CHECK_THROWS_AS(fit_exponential_crude(bare), ValidationError);
    CHECK_THROWS_AS(fit_exponential_sophisticated(bare), ValidationError);
    CHECK_THROWS_AS(fit_hill(bare, 1, ExpertMode::crude), ValidationError);
    CHECK_THROWS_AS(fit_numeric(bare, {ModelFamily::exponential, 1.0}, ExpertMode::crude),
                    ValidationError);

    ExpertSample crude = with_judgments(s, {1.0, 1.0});
    CHECK_THROWS_AS(fit_exponential_sophisticated(crude), ValidationError);
    CHECK_THROWS_AS(fit_pareto(crude, 0.5, ExpertMode::sophisticated), ValidationError);
}
