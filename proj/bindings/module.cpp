#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expertkm/csv.hpp"
#include "expertkm/empirical.hpp"
#include "expertkm/errors.hpp"
#include "expertkm/expert.hpp"
#include "expertkm/fit.hpp"
#include "expertkm/kernels.hpp"
#include "expertkm/product_limit.hpp"
#include "expertkm/sample.hpp"
#include "expertkm/simulate.hpp"
#include "expertkm/special.hpp"
#include "expertkm/step_curve.hpp"

namespace py = pybind11;
using namespace expertkm;

PYBIND11_MODULE(_expertkm, m) {
    m.doc() = "Expert-augmented product-limit estimation for right-censored portfolios";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    // ------------------------------------------------------------- samples
    py::class_<Observation>(m, "Observation")
        .def(py::init([](std::int64_t id, double w, int delta, std::optional<double> eta,
                         std::optional<double> x_true, std::optional<double> y_true,
                         std::optional<double> c_true) {
                 return Observation{id, w, delta, eta, x_true, y_true, c_true};
             }),
             py::arg("id"), py::arg("w"), py::arg("delta"), py::arg("eta") = std::nullopt,
             py::arg("x_true") = std::nullopt, py::arg("y_true") = std::nullopt,
             py::arg("c_true") = std::nullopt)
        .def_readwrite("id", &Observation::id)
        .def_readwrite("w", &Observation::w)
        .def_readwrite("delta", &Observation::delta)
        .def_readwrite("eta", &Observation::eta)
        .def_readwrite("x_true", &Observation::x_true)
        .def_readwrite("y_true", &Observation::y_true)
        .def_readwrite("c_true", &Observation::c_true)
        .def("__repr__", [](const Observation& o) {
            return "Observation(id=" + std::to_string(o.id) + ", w=" + std::to_string(o.w) +
                   ", delta=" + std::to_string(o.delta) + ")";
        });

    py::enum_<SortDirection>(m, "SortDirection")
        .value("event_first", SortDirection::event_first)
        .value("censor_first", SortDirection::censor_first);

    py::class_<SortedSample>(m, "SortedSample")
        .def_readonly("obs", &SortedSample::obs)
        .def_readonly("tie_rank", &SortedSample::tie_rank)
        .def_readonly("order", &SortedSample::order)
        .def_readonly("direction", &SortedSample::direction)
        .def("__len__", &SortedSample::size)
        .def("max_w", &SortedSample::max_w);

    m.def("validate_observation", &validate_observation, py::arg("obs"), py::arg("index"));
    m.def("sort_sample", &sort_sample, py::arg("sample"),
          py::arg("direction") = SortDirection::event_first);

    // -------------------------------------------------------------- curves
    py::class_<StepCurve>(m, "StepCurve")
        .def_readonly("times", &StepCurve::times)
        .def_readonly("values", &StepCurve::values)
        .def_readonly("initial", &StepCurve::initial)
        .def("evaluate", &StepCurve::evaluate, py::arg("t"))
        .def("left_limit", &StepCurve::left_limit, py::arg("t"))
        .def("last_value", &StepCurve::last_value)
        .def("__len__", &StepCurve::size);

    py::class_<KmCurve>(m, "KmCurve")
        .def_readonly("curve", &KmCurve::curve)
        .def_readonly("at_risk", &KmCurve::at_risk)
        .def_readonly("last_obs", &KmCurve::last_obs)
        .def("evaluate", &KmCurve::evaluate, py::arg("t"))
        .def("left_limit", &KmCurve::left_limit, py::arg("t"))
        .def("survival", &KmCurve::survival, py::arg("t"));

    m.def("ecdf", &ecdf, py::arg("sample"));
    m.def("sub_ecdf", &sub_ecdf, py::arg("sample"), py::arg("weights"));
    m.def("km_event",
          py::overload_cast<const SortedSample&, const std::vector<double>&>(&km_event),
          py::arg("sample"), py::arg("weights"));
    m.def("km_event", py::overload_cast<const SortedSample&>(&km_event), py::arg("sample"));
    m.def("km_censor", &km_censor, py::arg("sample"));
    m.def("cumulative_hazard", &cumulative_hazard, py::arg("sample"), py::arg("weights"));
    m.def("km_ipcw", &km_ipcw, py::arg("sample"), py::arg("numerator_weights"),
          py::arg("censor_curve"));

    // ------------------------------------------------------------- kernels
    py::enum_<KernelKind>(m, "KernelKind")
        .value("dirac", KernelKind::dirac)
        .value("truncated_gaussian", KernelKind::truncated_gaussian)
        .value("truncated_gamma", KernelKind::truncated_gamma)
        .value("uniform", KernelKind::uniform);

    py::class_<BeliefKernel>(m, "BeliefKernel")
        .def_readonly("kind", &BeliefKernel::kind)
        .def_readonly("lower", &BeliefKernel::lower)
        .def_readonly("p1", &BeliefKernel::p1)
        .def_readonly("p2", &BeliefKernel::p2)
        .def("__repr__", [](const BeliefKernel& k) {
            return "BeliefKernel(" + kernel_kind_name(k.kind) +
                   ", lower=" + std::to_string(k.lower) + ")";
        });

    m.def("dirac_kernel", &dirac_kernel, py::arg("atom"), py::arg("lower"));
    m.def("truncated_gaussian_kernel", &truncated_gaussian_kernel, py::arg("location"),
          py::arg("scale"), py::arg("lower"));
    m.def("truncated_gamma_kernel", &truncated_gamma_kernel, py::arg("shape"), py::arg("rate"),
          py::arg("lower"));
    m.def("uniform_kernel", &uniform_kernel, py::arg("lower"), py::arg("upper"));
    m.def("kernel_kind_name", &kernel_kind_name, py::arg("kind"));
    m.def("kernel_cdf", &kernel_cdf, py::arg("kernel"), py::arg("t"));
    m.def("kernel_mean", &kernel_mean, py::arg("kernel"));
    m.def("kernel_pdf", &kernel_pdf, py::arg("kernel"), py::arg("t"));
    m.def("kernel_log_ratio_mean", &kernel_log_ratio_mean, py::arg("kernel"), py::arg("ref"));

    // ----------------------------------------------------- expert estimators
    py::class_<ExpertSample>(m, "ExpertSample")
        .def_readonly("base", &ExpertSample::base)
        .def_readonly("judgments", &ExpertSample::judgments)
        .def_readonly("beliefs", &ExpertSample::beliefs)
        .def("__len__", &ExpertSample::size);

    m.def("with_judgments", py::overload_cast<SortedSample>(&with_judgments), py::arg("base"));
    m.def("with_judgments",
          py::overload_cast<SortedSample, const std::vector<double>&>(&with_judgments),
          py::arg("base"), py::arg("eta"));
    m.def("with_beliefs", &with_beliefs, py::arg("base"), py::arg("beliefs"));
    m.def("crude_km", &crude_km, py::arg("sample"));
    m.def("crude_km_ipcw", &crude_km_ipcw, py::arg("sample"));

    py::class_<MixtureCurve>(m, "MixtureCurve")
        .def_readonly("coefs", &MixtureCurve::coefs)
        .def_readonly("kernels", &MixtureCurve::kernels)
        .def("evaluate", &MixtureCurve::evaluate, py::arg("t"))
        .def("total_mass", &MixtureCurve::total_mass);

    m.def("sophisticated_km", &sophisticated_km, py::arg("sample"));
    m.def("oracle_km", py::overload_cast<const SortedSample&>(&oracle_km), py::arg("sample"));
    m.def("oracle_km", py::overload_cast<const ExpertSample&>(&oracle_km), py::arg("sample"));
    m.def("default_grid", &default_grid, py::arg("sample"),
          py::arg("equispaced") = static_cast<std::size_t>(512));

    // ---------------------------------------------------------------- fits
    py::enum_<ExpertMode>(m, "ExpertMode")
        .value("crude", ExpertMode::crude)
        .value("sophisticated", ExpertMode::sophisticated);

    py::enum_<FitMethod>(m, "FitMethod")
        .value("closed_form", FitMethod::closed_form)
        .value("numeric", FitMethod::numeric);

    py::enum_<ModelFamily>(m, "ModelFamily")
        .value("exponential", ModelFamily::exponential)
        .value("pareto", ModelFamily::pareto);

    py::class_<ParametricModel>(m, "ParametricModel")
        .def(py::init([](ModelFamily family, double sigma) {
                 return ParametricModel{family, sigma};
             }),
             py::arg("family") = ModelFamily::exponential, py::arg("sigma") = 1.0)
        .def_readwrite("family", &ParametricModel::family)
        .def_readwrite("sigma", &ParametricModel::sigma);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("estimate", &FitResult::estimate)
        .def_readonly("weight_mass", &FitResult::weight_mass)
        .def_readonly("method", &FitResult::method)
        .def_readonly("residual", &FitResult::residual)
        .def("__repr__", [](const FitResult& r) {
            return "FitResult(estimate=" + std::to_string(r.estimate) + ")";
        });

    py::class_<HillPoint>(m, "HillPoint")
        .def_readonly("k", &HillPoint::k)
        .def_readonly("estimate", &HillPoint::estimate);

    m.def("fit_exponential_crude", &fit_exponential_crude, py::arg("sample"));
    m.def("fit_exponential_sophisticated", &fit_exponential_sophisticated, py::arg("sample"));
    m.def("fit_pareto", &fit_pareto, py::arg("sample"), py::arg("sigma"), py::arg("mode"));
    m.def("fit_hill", &fit_hill, py::arg("sample"), py::arg("k"), py::arg("mode"));
    m.def("fit_hill_sweep", &fit_hill_sweep, py::arg("sample"), py::arg("mode"));
    m.def("fit_numeric", &fit_numeric, py::arg("sample"), py::arg("model"), py::arg("mode"));

    py::enum_<EvalRoute>(m, "EvalRoute")
        .value("closed_form", EvalRoute::closed_form)
        .value("quadrature", EvalRoute::quadrature);

    m.def("expected_log_density", &expected_log_density, py::arg("kernel"), py::arg("model"),
          py::arg("theta"), py::arg("route") = EvalRoute::closed_form);

    m.def("upper_incomplete_gamma", &upper_incomplete_gamma, py::arg("s"), py::arg("x"));

    // ------------------------------------------------------------ scenarios
    py::class_<HazardSpec>(m, "HazardSpec")
        .def(py::init<double, double, double, double, double>(), py::arg("a") = 0.1,
             py::arg("b") = 1.5, py::arg("c") = 2.5, py::arg("horizon") = 20.0,
             py::arg("contaminant_scale") = 1.0)
        .def_readonly("a", &HazardSpec::a)
        .def_readonly("b", &HazardSpec::b)
        .def_readonly("c", &HazardSpec::c)
        .def_readonly("horizon", &HazardSpec::horizon)
        .def_readonly("contaminant_scale", &HazardSpec::contaminant_scale)
        .def("total_rate", &HazardSpec::total_rate, py::arg("t"))
        .def("contaminant_rate", &HazardSpec::contaminant_rate, py::arg("t"))
        .def("event_rate", &HazardSpec::event_rate, py::arg("t"))
        .def("cumulative_total", &HazardSpec::cumulative_total, py::arg("t"))
        .def("cumulative_contaminant", &HazardSpec::cumulative_contaminant, py::arg("t"))
        .def("cumulative_event", &HazardSpec::cumulative_event, py::arg("t"));

    m.def("mark_function", &mark_function, py::arg("hazards"), py::arg("w"));

    py::class_<SophNoise>(m, "SophNoise")
        .def(py::init([](double shape1, double rate1, double shape2, double rate2, double scale) {
                 return SophNoise{shape1, rate1, shape2, rate2, scale};
             }),
             py::arg("shape1") = 1.0, py::arg("rate1") = 1.0, py::arg("shape2") = 1.0,
             py::arg("rate2") = 10.0, py::arg("scale") = 1.0)
        .def_readwrite("shape1", &SophNoise::shape1)
        .def_readwrite("rate1", &SophNoise::rate1)
        .def_readwrite("shape2", &SophNoise::shape2)
        .def_readwrite("rate2", &SophNoise::rate2)
        .def_readwrite("scale", &SophNoise::scale);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init([](HazardSpec hazards, long n, std::uint64_t seed,
                         std::optional<double> crude_p0, std::optional<SophNoise> soph_noise) {
                 return ScenarioConfig{hazards, n, seed, crude_p0, soph_noise};
             }),
             py::arg("hazards") = HazardSpec(), py::arg("n") = 1, py::arg("seed") = 1,
             py::arg("crude_p0") = std::nullopt, py::arg("soph_noise") = std::nullopt)
        .def_readwrite("hazards", &ScenarioConfig::hazards)
        .def_readwrite("n", &ScenarioConfig::n)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("crude_p0", &ScenarioConfig::crude_p0)
        .def_readwrite("soph_noise", &ScenarioConfig::soph_noise);

    m.def("validate_scenario", &validate_scenario, py::arg("config"));
    m.def("sample_event_times", &sample_event_times, py::arg("config"));
    m.def("crude_expert_scenario", &crude_expert_scenario, py::arg("obs"), py::arg("hazards"),
          py::arg("p0"), py::arg("seed"));
    m.def("perfect_crude_judgments", &perfect_crude_judgments, py::arg("obs"));
    m.def("sophisticated_expert_scenario", &sophisticated_expert_scenario, py::arg("obs"),
          py::arg("noise"), py::arg("seed"));

    py::enum_<DatasetSchemeKind>(m, "DatasetSchemeKind")
        .value("uniform_reopen", DatasetSchemeKind::uniform_reopen)
        .value("top_quantile_reopen", DatasetSchemeKind::top_quantile_reopen)
        .value("proportional_kernel", DatasetSchemeKind::proportional_kernel)
        .value("top_quantile_kernel", DatasetSchemeKind::top_quantile_kernel);

    py::class_<DatasetScheme>(m, "DatasetScheme")
        .def_readonly("kind", &DatasetScheme::kind)
        .def_readonly("reopen_prob", &DatasetScheme::reopen_prob)
        .def_readonly("fraction", &DatasetScheme::fraction)
        .def_readonly("keep", &DatasetScheme::keep)
        .def_readonly("location_mult", &DatasetScheme::location_mult)
        .def_readonly("scale_a", &DatasetScheme::scale_a)
        .def_readonly("scale_b", &DatasetScheme::scale_b);

    m.def("uniform_reopen", &uniform_reopen, py::arg("reopen_prob"));
    m.def("top_quantile_reopen", &top_quantile_reopen, py::arg("fraction"), py::arg("keep"));
    m.def("proportional_kernel", &proportional_kernel, py::arg("location_mult"),
          py::arg("scale_a"), py::arg("scale_b"));
    m.def("top_quantile_kernel", &top_quantile_kernel, py::arg("fraction"),
          py::arg("location_mult"), py::arg("scale_a"), py::arg("scale_b"));

    py::class_<ExpertData>(m, "ExpertData")
        .def_readonly("judgments", &ExpertData::judgments)
        .def_readonly("beliefs", &ExpertData::beliefs);

    m.def("dataset_expert_scenario", &dataset_expert_scenario, py::arg("obs"), py::arg("scheme"),
          py::arg("seed"));

    // ----------------------------------------------------------------- csv
    m.def("read_observations_csv", &read_observations_csv, py::arg("path"));
    m.def("write_observations_csv", &write_observations_csv, py::arg("path"), py::arg("obs"));
    m.def("read_kernels_csv", &read_kernels_csv, py::arg("path"), py::arg("obs"));
    m.def("write_kernels_csv", &write_kernels_csv, py::arg("path"), py::arg("obs"),
          py::arg("beliefs"));
    m.def("write_curve_csv", &write_curve_csv, py::arg("path"), py::arg("times"),
          py::arg("estimates"));
    m.def("format_real", &format_real, py::arg("value"));
}
