#include "agg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "agg/bounds.hpp"

namespace agg {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Instance {
    FiniteDistribution dist;
    FunctionClass cls;
    double delta;  // min over rules of exact excess hinge risk
    double mah_c;
};

Instance make_instance(const ExperimentConfig& config, std::size_t n) {
    if (config.use_cube) {
        const CubeParams params = choose_params(n, config.M, config.kappa);
        SignVector sigma;
        sigma.sigma.assign(params.N - 1, 1);
        FiniteDistribution dist = cube_distribution(params, sigma);
        FunctionClass cls = hypercube_class(params, config.M);
        const double c = dist.mah_constant(config.kappa);
        // the Bayes rule is in the class by construction
        return {std::move(dist), std::move(cls), 0.0, c};
    }
    const FiniteDistribution& dist = *config.distribution;
    const FunctionClass& cls = *config.function_class;
    double delta = dist.excess_hinge(cls.rules.front());
    for (const Rule& r : cls.rules)
        delta = std::min(delta, dist.excess_hinge(r));
    return {dist, cls, delta, dist.mah_constant(config.kappa)};
}

TrialOutcome run_trial_on(const Instance& inst, const ExperimentConfig& config,
                          std::size_t n, Procedure procedure, std::uint64_t seed) {
    const LabeledSample sample = inst.dist.sample(n, seed);
    const WeightVector w = compute_weights(procedure, config.loss, inst.cls, sample);
    const Rule aggregate = aggregate_rule(w, inst.cls);
    TrialOutcome out;
    out.excess_hinge = inst.dist.excess_hinge(aggregate);
    out.excess_bayes = inst.dist.zero_one_risk(aggregate) - inst.dist.bayes_risk();
    return out;
}

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    const double t = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= t;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (t - 1.0)) / std::sqrt(t)};
}

double clamp_noise(double x) { return (x < 0.0 && x >= -1e-12) ? 0.0 : x; }

}  // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (n_grid.empty()) throw std::invalid_argument("config: n_grid is empty");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("config: n_grid must be strictly increasing");
    if (procedures.empty()) throw std::invalid_argument("config: no procedures");
    if (kappa < 1.0) throw std::invalid_argument("config: kappa must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (!use_cube && (!distribution || !function_class))
        throw std::invalid_argument("config: distribution and class required");
    if (use_cube) {
        for (std::size_t n : n_grid) choose_params(n, M, kappa);  // throws on violation
    }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n,
                         std::size_t procedure_index, std::size_t trial_index) {
    std::uint64_t s = splitmix64(master_seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(n));
    s = splitmix64(s ^ (static_cast<std::uint64_t>(procedure_index) + 1));
    s = splitmix64(s ^ (static_cast<std::uint64_t>(trial_index) + 1));
    return s;
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t n,
                       Procedure procedure, std::uint64_t seed) {
    return run_trial_on(make_instance(config, n), config, n, procedure, seed);
}

ExperimentResult monte_carlo(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.kappa = config.kappa;
    result.M = config.M;
    result.master_seed = config.master_seed;

    for (std::size_t n : config.n_grid) {
        const Instance inst = make_instance(config, n);
        for (std::size_t pi = 0; pi < config.procedures.size(); ++pi) {
            const Procedure proc = config.procedures[pi];
            std::vector<TrialOutcome> outcomes(config.trials);

            const auto worker = [&](std::size_t begin, std::size_t end) {
                for (std::size_t t = begin; t < end; ++t)
                    outcomes[t] = run_trial_on(
                        inst, config, n, proc,
                        trial_seed(config.master_seed, n, pi, t));
            };
            const std::size_t nthreads =
                std::min<std::size_t>(config.threads, config.trials);
            if (nthreads <= 1) {
                worker(0, config.trials);
            } else {
                std::vector<std::thread> pool;
                const std::size_t chunk = (config.trials + nthreads - 1) / nthreads;
                for (std::size_t k = 0; k < nthreads; ++k)
                    pool.emplace_back(worker, k * chunk,
                                      std::min(config.trials, (k + 1) * chunk));
                for (auto& th : pool) th.join();
            }

            // Reduce in trial order so the result is thread-count independent.
            std::vector<double> hinge(config.trials), bayes(config.trials);
            for (std::size_t t = 0; t < config.trials; ++t) {
                hinge[t] = outcomes[t].excess_hinge;
                bayes[t] = outcomes[t].excess_bayes;
            }
            const auto [mh, sh] = mean_stderr(hinge);
            const auto [mb, sb] = mean_stderr(bayes);

            ResultRow row;
            row.n = n;
            row.procedure = proc;
            row.mean_excess_hinge = clamp_noise(mh);
            row.stderr_hinge = sh;
            row.mean_excess_bayes = clamp_noise(mb);
            row.stderr_bayes = sb;
            row.theory_remainder =
                remainder(n, {config.kappa, config.M, inst.mah_c, inst.delta, proc});
            row.trials = config.trials;
            result.rows.push_back(row);
        }
    }
    return result;
}

RateFit fit_rate(const ExperimentResult& result, Procedure procedure, double kappa) {
    std::vector<double> xs, ys;
    for (const ResultRow& row : result.rows) {
        if (row.procedure != procedure) continue;
        if (row.mean_excess_hinge <= 0.0) continue;  // log undefined; drop
        xs.push_back(std::log(static_cast<double>(row.n)));
        ys.push_back(std::log(row.mean_excess_hinge));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("fit_rate: fewer than 4 usable points");

    const double m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.target_exponent = kappa / (2.0 * kappa - 1.0);
    return fit;
}

void for_each_simplex_point(std::size_t dims, std::size_t steps,
                            const std::function<void(const std::vector<double>&)>& fn) {
    std::vector<std::size_t> counts(dims, 0);
    std::vector<double> point(dims);
    const auto emit = [&] {
        for (std::size_t j = 0; j < dims; ++j)
            point[j] = static_cast<double>(counts[j]) / static_cast<double>(steps);
        fn(point);
    };
    // recursive enumeration of compositions of `steps` into `dims` parts
    const std::function<void(std::size_t, std::size_t)> rec =
        [&](std::size_t j, std::size_t remaining) {
            if (j + 1 == dims) {
                counts[j] = remaining;
                emit();
                return;
            }
            for (std::size_t k = 0; k <= remaining; ++k) {
                counts[j] = k;
                rec(j + 1, remaining - k);
            }
        };
    rec(0, steps);
}

HullOracle hull_oracle(const FiniteDistribution& dist, const FunctionClass& cls,
                       double grid_step) {
    if (cls.size() > 4)
        throw std::invalid_argument("hull_oracle: M must be <= 4");
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw std::invalid_argument("hull_oracle: grid_step must be in (0, 0.5]");

    HullOracle out;
    out.min_vertex = dist.hinge_risk(cls.rules.front());
    for (const Rule& r : cls.rules)
        out.min_vertex = std::min(out.min_vertex, dist.hinge_risk(r));

    const std::size_t steps =
        static_cast<std::size_t>(std::llround(1.0 / grid_step));
    double best = std::numeric_limits<double>::infinity();
    for_each_simplex_point(cls.size(), steps, [&](const std::vector<double>& lambda) {
        best = std::min(best, dist.hinge_risk(aggregate_rule(WeightVector(lambda), cls)));
    });
    out.min_grid = best;
    return out;
}

std::string result_to_csv(const ExperimentResult& result) {
    const auto fmt = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    std::string csv =
        "n,M,kappa,procedure,mean_excess_hinge,stderr_hinge,mean_excess_bayes,"
        "stderr_bayes,theory_remainder,trials,seed\n";
    for (const ResultRow& row : result.rows) {
        csv += std::to_string(row.n) + ',' + std::to_string(result.M) + ',' +
               fmt(result.kappa) + ',' + procedure_name(row.procedure) + ',' +
               fmt(row.mean_excess_hinge) + ',' + fmt(row.stderr_hinge) + ',' +
               fmt(row.mean_excess_bayes) + ',' + fmt(row.stderr_bayes) + ',' +
               fmt(row.theory_remainder) + ',' + std::to_string(row.trials) + ',' +
               std::to_string(result.master_seed) + '\n';
    }
    return csv;
}

}  // namespace agg
