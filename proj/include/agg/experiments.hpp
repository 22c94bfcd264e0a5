#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agg/aggregates.hpp"
#include "agg/cube.hpp"
#include "agg/distribution.hpp"

namespace agg {

/// Monte Carlo sweep description. The underlying instance is either a fixed
/// (distribution, class) pair or the cube directive, in which case the cube
/// parameters are chosen per sample size with the all-(+1) sign vector.
struct ExperimentConfig {
    double kappa = 1.0;
    std::size_t M = 16;
    std::vector<std::size_t> n_grid;
    std::size_t trials = 1;
    std::vector<Procedure> procedures;
    Loss loss = Loss::hinge_loss();
    bool use_cube = true;
    std::optional<FiniteDistribution> distribution;  // when !use_cube
    std::optional<FunctionClass> function_class;     // when !use_cube
    std::uint64_t master_seed = 0;
    std::string output_path;
    int threads = 1;

    void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
    std::size_t n = 0;
    Procedure procedure = Procedure::ERM;
    double mean_excess_hinge = 0.0;
    double stderr_hinge = 0.0;
    double mean_excess_bayes = 0.0;
    double stderr_bayes = 0.0;
    double theory_remainder = 0.0;
    std::size_t trials = 0;
};

struct ExperimentResult {
    double kappa = 1.0;
    std::size_t M = 0;
    std::uint64_t master_seed = 0;
    std::vector<ResultRow> rows;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double target_exponent = 0.0;  // kappa/(2kappa-1); fitted slope targets its negative
};

/// Per-trial seed derived from (master_seed, n, procedure, trial) by a
/// fixed splitmix64 chain; independent of execution order and thread count.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n,
                         std::size_t procedure_index, std::size_t trial_index);

struct TrialOutcome {
    double excess_hinge = 0.0;
    double excess_bayes = 0.0;
};

/// Draws a sample of size n, aggregates, and returns the exact excess hinge
/// risk of the clipped aggregate and the exact excess Bayes risk of its sign.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t n,
                       Procedure procedure, std::uint64_t seed);

ExperimentResult monte_carlo(const ExperimentConfig& config);

/// Least-squares slope of log(mean_excess_hinge) vs log(n) for one
/// procedure. Rows with nonpositive mean excess are dropped; at least 4
/// points must remain.
RateFit fit_rate(const ExperimentResult& result, Procedure procedure, double kappa);

/// Brute-force check of hull/vertex equivalence for the hinge risk:
/// min over rules vs min over a simplex grid of aggregates. M <= 4.
struct HullOracle {
    double min_vertex = 0.0;
    double min_grid = 0.0;
};
HullOracle hull_oracle(const FiniteDistribution& dist, const FunctionClass& cls,
                       double grid_step);

/// Enumerates simplex grid points with the given number of coordinates and
/// resolution steps (weights are multiples of 1/steps), calling fn on each.
void for_each_simplex_point(std::size_t dims, std::size_t steps,
                            const std::function<void(const std::vector<double>&)>& fn);

/// CSV serialization of a result, one row per (n, procedure); columns
/// n, M, kappa, procedure, mean_excess_hinge, stderr_hinge,
/// mean_excess_bayes, stderr_bayes, theory_remainder, trials, seed.
std::string result_to_csv(const ExperimentResult& result);

}  // namespace agg
