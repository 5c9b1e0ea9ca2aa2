#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "expertkm/csv.hpp"
#include "expertkm/errors.hpp"
#include "expertkm/expert.hpp"
#include "expertkm/fit.hpp"
#include "expertkm/product_limit.hpp"
#include "expertkm/sample.hpp"
#include "expertkm/simulate.hpp"
#include "expertkm/version.hpp"

namespace {

using nlohmann::json;
using namespace expertkm;

void write_manifest(const std::string& out_path, const json& manifest) {
    const std::string path = out_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << manifest.dump(2) << "\n";
    if (!out) throw ValidationError("failed while writing: " + path);
}

json base_manifest(const std::string& command, const std::vector<std::string>& argv) {
    json m;
    m["tool"] = "expertkm";
    m["version"] = version;
    m["command"] = command;
    m["argv"] = argv;
    return m;
}

std::vector<double> parse_noise_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        char* end = nullptr;
        values.push_back(std::strtod(field.c_str(), &end));
        if (field.empty() || end != field.c_str() + field.size())
            throw ValidationError("--soph-noise: unparseable entry '" + field + "'");
    }
    if (values.size() != 4)
        throw ValidationError("--soph-noise expects four values: shape1,rate1,shape2,rate2");
    return values;
}

struct SimulateArgs {
    long n = 5000;
    std::uint64_t seed = 1;
    double a = 0.1, b = 1.5, c = 2.5, horizon = 20.0, contaminant_scale = 1.0;
    std::optional<double> crude_p0;
    std::optional<SophNoise> noise;
    std::string out;
    std::string kernels_out;
};

int run_simulate(const SimulateArgs& args) {
    const HazardSpec hazards(args.a, args.b, args.c, args.horizon, args.contaminant_scale);
    ScenarioConfig cfg;
    cfg.hazards = hazards;
    cfg.n = args.n;
    cfg.seed = args.seed;
    cfg.crude_p0 = args.crude_p0;
    cfg.soph_noise = args.noise;

    std::vector<Observation> obs = sample_event_times(cfg);
    if (args.crude_p0) {
        const std::vector<double> eta =
            crude_expert_scenario(obs, hazards, *args.crude_p0, args.seed);
        for (std::size_t i = 0; i < obs.size(); ++i) obs[i].eta = eta[i];
    }
    write_observations_csv(args.out, obs);
    if (args.noise) {
        const auto beliefs = sophisticated_expert_scenario(obs, *args.noise, args.seed);
        write_kernels_csv(args.kernels_out, obs, beliefs);
    }

    std::vector<std::string> argv = {"simulate",
                                     "--n", std::to_string(args.n),
                                     "--seed", std::to_string(args.seed),
                                     "--a", format_real(args.a),
                                     "--b", format_real(args.b),
                                     "--c", format_real(args.c),
                                     "--horizon", format_real(args.horizon),
                                     "--contaminant-scale", format_real(args.contaminant_scale)};
    if (args.crude_p0) {
        argv.push_back("--crude-p0");
        argv.push_back(format_real(*args.crude_p0));
    }
    if (args.noise) {
        argv.push_back("--soph-noise");
        argv.push_back(format_real(args.noise->shape1) + "," + format_real(args.noise->rate1) +
                       "," + format_real(args.noise->shape2) + "," + format_real(args.noise->rate2));
        argv.push_back("--soph-noise-scale");
        argv.push_back(format_real(args.noise->scale));
        argv.push_back("--kernels-out");
        argv.push_back(args.kernels_out);
    }
    argv.push_back("--out");
    argv.push_back(args.out);

    json m = base_manifest("simulate", argv);
    m["inputs"] = json::object();
    m["outputs"]["observations"] = args.out;
    if (args.noise) m["outputs"]["kernels"] = args.kernels_out;
    json config = {{"n", args.n},
                   {"seed", args.seed},
                   {"a", args.a},
                   {"b", args.b},
                   {"c", args.c},
                   {"horizon", args.horizon},
                   {"contaminant_scale", args.contaminant_scale}};
    if (args.crude_p0) config["crude_p0"] = *args.crude_p0;
    if (args.noise)
        config["soph_noise"] = {{"shape1", args.noise->shape1},
                                {"rate1", args.noise->rate1},
                                {"shape2", args.noise->shape2},
                                {"rate2", args.noise->rate2},
                                {"scale", args.noise->scale}};
    m["config"] = config;
    write_manifest(args.out, m);
    return 0;
}

struct EstimateArgs {
    std::string input;
    std::string estimator;
    std::string kernels;
    std::size_t grid_points = 512;
    std::string out;
};

int run_estimate(const EstimateArgs& args) {
    if (args.grid_points < 2)
        throw ValidationError("--grid-points must be at least 2");
    const std::vector<Observation> obs = read_observations_csv(args.input);
    const SortedSample sorted = sort_sample(obs);
    const std::vector<double> grid = default_grid(sorted, args.grid_points);

    std::vector<double> values(grid.size());
    if (args.estimator == "km") {
        const KmCurve f = km_event(sorted);
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.evaluate(grid[i]);
    } else if (args.estimator == "crude") {
        const KmCurve f = crude_km(with_judgments(sorted));
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.evaluate(grid[i]);
    } else if (args.estimator == "sophisticated") {
        if (args.kernels.empty())
            throw ValidationError("the sophisticated estimator requires --kernels");
        const auto beliefs = read_kernels_csv(args.kernels, obs);
        const MixtureCurve f = sophisticated_km(with_beliefs(sorted, beliefs));
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.evaluate(grid[i]);
    } else {
        const StepCurve f = oracle_km(sorted);
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.evaluate(grid[i]);
    }
    write_curve_csv(args.out, grid, values);

    std::vector<std::string> argv = {"estimate", "--input", args.input,
                                     "--estimator", args.estimator};
    if (!args.kernels.empty()) {
        argv.push_back("--kernels");
        argv.push_back(args.kernels);
    }
    argv.push_back("--grid-points");
    argv.push_back(std::to_string(args.grid_points));
    argv.push_back("--out");
    argv.push_back(args.out);

    json m = base_manifest("estimate", argv);
    m["inputs"]["observations"] = args.input;
    if (!args.kernels.empty()) m["inputs"]["kernels"] = args.kernels;
    m["outputs"]["curve"] = args.out;
    m["config"] = {{"estimator", args.estimator},
                   {"grid_points", args.grid_points},
                   {"grid_size", grid.size()}};
    write_manifest(args.out, m);
    return 0;
}

struct FitArgs {
    std::string input;
    std::string model;
    std::string mode = "crude";
    std::string kernels;
    std::optional<double> sigma;
    std::optional<long> k;
    bool sweep = false;
    std::string out;
};

int run_fit(const FitArgs& args) {
    if (args.model != "pareto" && args.sigma)
        throw ValidationError("--sigma only applies to the pareto model");
    if (args.model != "hill" && (args.k || args.sweep))
        throw ValidationError("--k/--sweep only apply to the hill model");
    if (args.model == "pareto" && !args.sigma)
        throw ValidationError("the pareto model requires --sigma");
    if (args.model == "hill" && args.k.has_value() == args.sweep)
        throw ValidationError("the hill model requires exactly one of --k and --sweep");

    const ExpertMode mode =
        args.mode == "crude" ? ExpertMode::crude : ExpertMode::sophisticated;
    const std::vector<Observation> obs = read_observations_csv(args.input);
    const SortedSample sorted = sort_sample(obs);
    ExpertSample sample;
    if (mode == ExpertMode::crude) {
        sample = with_judgments(sorted);
    } else {
        if (args.kernels.empty())
            throw ValidationError("sophisticated mode requires --kernels");
        sample = with_beliefs(sorted, read_kernels_csv(args.kernels, obs));
    }

    json report;
    report["model"] = args.model;
    report["mode"] = args.mode;
    const auto fill = [&report](const FitResult& r) {
        report["estimate"] = r.estimate;
        report["weight_mass"] = r.weight_mass;
        report["method"] = r.method == FitMethod::closed_form ? "closed-form" : "numeric";
        report["residual"] = r.residual;
    };
    if (args.model == "exp") {
        fill(mode == ExpertMode::crude ? fit_exponential_crude(sample)
                                       : fit_exponential_sophisticated(sample));
    } else if (args.model == "pareto") {
        report["sigma"] = *args.sigma;
        fill(fit_pareto(sample, *args.sigma, mode));
    } else if (args.sweep) {
        json table = json::array();
        for (const HillPoint& p : fit_hill_sweep(sample, mode))
            table.push_back({{"k", p.k}, {"estimate", p.estimate}});
        report["sweep"] = table;
    } else {
        report["k"] = *args.k;
        fill(fit_hill(sample, *args.k, mode));
    }

    std::ofstream out(args.out);
    if (!out) throw ValidationError("cannot open output file: " + args.out);
    out << report.dump(2) << "\n";
    if (!out) throw ValidationError("failed while writing: " + args.out);

    std::vector<std::string> argv = {"fit", "--input", args.input, "--model", args.model,
                                     "--mode", args.mode};
    if (args.sigma) {
        argv.push_back("--sigma");
        argv.push_back(format_real(*args.sigma));
    }
    if (args.k) {
        argv.push_back("--k");
        argv.push_back(std::to_string(*args.k));
    }
    if (args.sweep) argv.push_back("--sweep");
    if (!args.kernels.empty()) {
        argv.push_back("--kernels");
        argv.push_back(args.kernels);
    }
    argv.push_back("--out");
    argv.push_back(args.out);

    json m = base_manifest("fit", argv);
    m["inputs"]["observations"] = args.input;
    if (!args.kernels.empty()) m["inputs"]["kernels"] = args.kernels;
    m["outputs"]["report"] = args.out;
    json config = {{"model", args.model}, {"mode", args.mode}, {"sweep", args.sweep}};
    if (args.sigma) config["sigma"] = *args.sigma;
    if (args.k) config["k"] = *args.k;
    m["config"] = config;
    write_manifest(args.out, m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expert-augmented product-limit estimation"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    double p0_value = 0.0;
    std::string noise_text;
    double noise_scale = 1.0;
    CLI::App* sim = app.add_subcommand("simulate", "draw a contaminated-scenario dataset");
    sim->add_option("--n", sim_args.n, "sample size");
    sim->add_option("--seed", sim_args.seed, "random seed");
    sim->add_option("--a", sim_args.a, "hazard level parameter");
    sim->add_option("--b", sim_args.b, "total-hazard decay rate");
    sim->add_option("--c", sim_args.c, "contaminant decay rate");
    sim->add_option("--horizon", sim_args.horizon, "censoring support upper bound");
    sim->add_option("--contaminant-scale", sim_args.contaminant_scale,
                    "multiplier on the contaminant rate");
    CLI::Option* p0_opt =
        sim->add_option("--crude-p0", p0_value, "crude expert effectiveness in [0,1]");
    CLI::Option* noise_opt = sim->add_option(
        "--soph-noise", noise_text, "sophisticated noise gammas: shape1,rate1,shape2,rate2");
    sim->add_option("--soph-noise-scale", noise_scale, "multiplier on the expert noise");
    sim->add_option("--kernels-out", sim_args.kernels_out, "belief kernel CSV path");
    sim->add_option("--out", sim_args.out, "observation CSV path")->required();

    EstimateArgs est_args;
    CLI::App* est = app.add_subcommand("estimate", "evaluate a distribution estimator on a grid");
    est->add_option("--input", est_args.input, "observation CSV")->required();
    est->add_option("--estimator", est_args.estimator, "km | crude | sophisticated | oracle")
        ->required()
        ->check(CLI::IsMember({"km", "crude", "sophisticated", "oracle"}));
    est->add_option("--kernels", est_args.kernels, "belief kernel CSV");
    est->add_option("--grid-points", est_args.grid_points, "equispaced grid points");
    est->add_option("--out", est_args.out, "curve CSV path")->required();

    FitArgs fit_args;
    double sigma_value = 0.0;
    long k_value = 0;
    CLI::App* fit = app.add_subcommand("fit", "semi-parametric model fits");
    fit->add_option("--input", fit_args.input, "observation CSV")->required();
    fit->add_option("--model", fit_args.model, "exp | pareto | hill")
        ->required()
        ->check(CLI::IsMember({"exp", "pareto", "hill"}));
    fit->add_option("--mode", fit_args.mode, "crude | sophisticated")
        ->check(CLI::IsMember({"crude", "sophisticated"}));
    CLI::Option* sigma_opt = fit->add_option("--sigma", sigma_value, "known pareto threshold");
    CLI::Option* k_opt = fit->add_option("--k", k_value, "hill order-statistic count");
    fit->add_flag("--sweep", fit_args.sweep, "emit the full hill k-sweep");
    fit->add_option("--kernels", fit_args.kernels, "belief kernel CSV");
    fit->add_option("--out", fit_args.out, "fit report JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            if (p0_opt->count() > 0) sim_args.crude_p0 = p0_value;
            if (noise_opt->count() > 0) {
                const std::vector<double> v = parse_noise_list(noise_text);
                sim_args.noise = SophNoise{v[0], v[1], v[2], v[3], noise_scale};
                if (sim_args.kernels_out.empty())
                    sim_args.kernels_out = sim_args.out + ".kernels.csv";
            }
            return run_simulate(sim_args);
        }
        if (est->parsed()) return run_estimate(est_args);
        if (sigma_opt->count() > 0) fit_args.sigma = sigma_value;
        if (k_opt->count() > 0) fit_args.k = k_value;
        return run_fit(fit_args);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
