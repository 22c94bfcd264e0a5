#include "agg/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <ostream>

#include "agg/aggregates.hpp"
#include "agg/bounds.hpp"
#include "agg/experiments.hpp"
#include "agg/io.hpp"

namespace agg {

namespace {

std::string meta_path(const std::string& csv_path) {
    const std::string ext = ".csv";
    if (csv_path.size() > ext.size() &&
        csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".meta";
    return csv_path + ".meta";
}

struct SimulateOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_path;
    std::int64_t seed = -1;
    int threads = 0;
};

ExperimentConfig build_config(const SimulateOptions& opt) {
    ExperimentConfig config = load_config(opt.config_path);
    for (const std::string& kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects KEY=VALUE, got '" + kv + "'");
        apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!opt.output_path.empty()) config.output_path = opt.output_path;
    if (opt.seed >= 0) config.master_seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.threads > 0) config.threads = opt.threads;
    config.validate();
    return config;
}

ExperimentResult simulate_to_files(const ExperimentConfig& config) {
    const ExperimentResult result = monte_carlo(config);
    if (!config.output_path.empty()) {
        atomic_write(config.output_path, result_to_csv(result));
        atomic_write(meta_path(config.output_path), config_to_text(config));
    }
    return result;
}

void add_simulate_options(CLI::App* cmd, SimulateOptions& opt) {
    cmd->add_option("--config", opt.config_path, "experiment config file")->required();
    cmd->add_option("--set", opt.overrides, "override a config key (KEY=VALUE)");
    cmd->add_option("--output", opt.output_path, "output CSV path");
    cmd->add_option("--seed", opt.seed, "override the master seed");
    cmd->add_option("--threads", opt.threads, "worker thread cap (does not affect results)");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"aggregation of classifiers on finite-support distributions"};
    app.require_subcommand(1);

    // aggregate
    auto* agg_cmd = app.add_subcommand("aggregate", "compute weights for one sample");
    std::string class_path, sample_path, procedure_str = "AEW", loss_str = "hinge";
    agg_cmd->add_option("--class", class_path, "function class file")->required();
    agg_cmd->add_option("--sample", sample_path, "labeled sample file")->required();
    agg_cmd->add_option("--procedure", procedure_str, "ERM|AERM|AEW|CAEW");
    agg_cmd->add_option("--loss", loss_str, "hinge|zero_one");

    // simulate / rates
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo sweep to CSV");
    SimulateOptions sim_opt;
    add_simulate_options(sim_cmd, sim_opt);

    auto* rates_cmd = app.add_subcommand("rates", "run a sweep and fit rate exponents");
    SimulateOptions rates_opt;
    add_simulate_options(rates_cmd, rates_opt);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "print theoretical bound curves as CSV");
    double b_kappa = 1.0, b_c = 1.0, b_delta = 0.0;
    std::size_t b_M = 16, b_nmin = 16, b_nmax = 16384;
    std::string b_procedure = "ERM";
    bounds_cmd->add_option("--kappa", b_kappa, "margin parameter")->required();
    bounds_cmd->add_option("--M", b_M, "class size")->required();
    bounds_cmd->add_option("--c", b_c, "margin constant")->required();
    bounds_cmd->add_option("--n-min", b_nmin, "smallest n (doubling grid)");
    bounds_cmd->add_option("--n-max", b_nmax, "largest n");
    bounds_cmd->add_option("--delta", b_delta, "oracle excess");
    bounds_cmd->add_option("--procedure", b_procedure, "ERM|AERM|AEW|CAEW");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "hull/vertex hinge-risk check");
    std::string o_dist_path, o_class_path;
    double o_step = 0.05;
    oracle_cmd->add_option("--distribution", o_dist_path, "distribution file")->required();
    oracle_cmd->add_option("--class", o_class_path, "function class file")->required();
    oracle_cmd->add_option("--grid-step", o_step, "simplex grid step");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hingeagg");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << e.what() << "\n";
            return 2;
        }

        if (agg_cmd->parsed()) {
            const FunctionClass cls = load_class(class_path);
            const LabeledSample sample = load_sample(sample_path);
            const Procedure proc = parse_procedure(procedure_str);
            Loss loss = Loss::hinge_loss();
            if (loss_str == "zero_one")
                loss = Loss::zero_one_loss();
            else if (loss_str != "hinge")
                throw std::invalid_argument("loss must be hinge or zero_one");
            const std::vector<double> risks = empirical_risks(loss, cls, sample);
            const WeightVector w = compute_weights(proc, loss, cls, sample);
            out << "procedure " << procedure_name(proc) << "\n";
            for (std::size_t j = 0; j < cls.size(); ++j)
                out << "rule " << j << " risk " << format_double(risks[j])
                    << " weight " << format_double(w[j]) << "\n";
        } else if (sim_cmd->parsed()) {
            const ExperimentConfig config = build_config(sim_opt);
            const ExperimentResult result = simulate_to_files(config);
            if (config.output_path.empty())
                out << result_to_csv(result);
            else
                out << "wrote " << config.output_path << "\n";
        } else if (rates_cmd->parsed()) {
            const ExperimentConfig config = build_config(rates_opt);
            const ExperimentResult result = simulate_to_files(config);
            for (Procedure proc : config.procedures) {
                const RateFit fit = fit_rate(result, proc, config.kappa);
                out << procedure_name(proc) << " slope " << format_double(fit.slope)
                    << " target " << format_double(-fit.target_exponent)
                    << " r_squared " << format_double(fit.r_squared) << "\n";
            }
        } else if (bounds_cmd->parsed()) {
            const Procedure proc = parse_procedure(b_procedure);
            out << "n,remainder,thm1_bound,thm2_bound\n";
            for (std::size_t n = b_nmin; n <= b_nmax; n *= 2) {
                const BoundSpec spec{b_kappa, b_M, b_c, b_delta, proc};
                const double rem = remainder(n, spec);
                const double base =
                    std::pow(std::log(static_cast<double>(b_M)) / static_cast<double>(n),
                             b_kappa / (2.0 * b_kappa - 1.0));
                out << n << ',' << format_double(rem) << ','
                    << format_double(theorem1_constant(b_kappa, b_c, proc) * rem) << ','
                    << format_double(theorem2_constant(b_kappa, b_c) * base) << "\n";
            }
        } else if (oracle_cmd->parsed()) {
            const FiniteDistribution dist = load_distribution(o_dist_path);
            const FunctionClass cls = load_class(o_class_path);
            const HullOracle res = hull_oracle(dist, cls, o_step);
            out << "min_vertex " << format_double(res.min_vertex) << "\n"
                << "min_grid " << format_double(res.min_grid) << "\n";
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace agg
