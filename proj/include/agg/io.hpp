#pragma once

#include <stdexcept>
#include <string>

#include "agg/aggregates.hpp"
#include "agg/distribution.hpp"
#include "agg/experiments.hpp"

namespace agg {

/// Parse failure in one of the text formats; carries a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what);
};

/// Distribution file: three parallel arrays, one per line.
///   atoms 0 1 2
///   masses 0.5 0.25 0.25
///   etas 0.25 0.75 1
/// Atom ids must be 0..N-1 in order. Values are written with 17 significant
/// digits so load(save(d)) is lossless.
FiniteDistribution load_distribution(const std::string& path);
void save_distribution(const FiniteDistribution& dist, const std::string& path);
std::string distribution_to_text(const FiniteDistribution& dist);

/// Class file: an atoms line followed by one `rule v0 v1 ...` line per rule.
FunctionClass load_class(const std::string& path);
void save_class(const FunctionClass& cls, const std::string& path);

/// Sample file: `n COUNT` followed by one `ATOM LABEL` line per entry.
LabeledSample load_sample(const std::string& path);
void save_sample(const LabeledSample& sample, const std::string& path);

/// Flat key = value config with '#' comments. Unknown keys are a hard
/// error. Recognized keys: kappa, M, n_grid, trials, procedures, loss,
/// distribution (cube | path), class (hypercube | path), master_seed,
/// output, threads.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& path_for_errors);
void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string config_to_text(const ExperimentConfig& config);

/// Writes via a temp file in the same directory followed by rename.
void atomic_write(const std::string& path, const std::string& content);

/// Full-precision double formatting (%.17g) used by every file format.
std::string format_double(double x);

}  // namespace agg
