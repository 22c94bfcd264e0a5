#pragma once

#include <span>
#include <vector>

#include "agg/distribution.hpp"
#include "agg/losses.hpp"

namespace agg {

/// An ordered list of M >= 2 rules on a common atom set.
struct FunctionClass {
    std::vector<Rule> rules;

    explicit FunctionClass(std::vector<Rule> rs);
    std::size_t size() const { return rules.size(); }
    std::size_t n_atoms() const { return rules.front().size(); }
};

/// A point on the M-simplex: nonnegative, sums to 1 within 1e-12.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t j) const { return weights_[j]; }
    std::size_t size() const { return weights_.size(); }

private:
    std::vector<double> weights_;
};

enum class Procedure { ERM, AERM, AEW, CAEW };

const char* procedure_name(Procedure p);
Procedure parse_procedure(const std::string& name);

/// Per-rule empirical risks of a class over a sample.
std::vector<double> empirical_risks(const Loss& loss, const FunctionClass& cls,
                                    const LabeledSample& sample);

/// Weight 1 on the empirical minimizer, ties broken by lowest index.
WeightVector erm_weights(std::span<const double> risks);

/// Weight 1/N on each of the N minimizers (ties within relative 1e-12).
WeightVector aerm_weights(std::span<const double> risks);

/// w_j = exp(-n r_j) / sum_k exp(-n r_k); min risk subtracted before
/// exponentiating to avoid underflow at large n.
WeightVector aew_weights(std::span<const double> risks, std::size_t n);

/// Solution of min over the simplex of sum_j l_j r_j + eps sum_j l_j log l_j:
/// l_j proportional to exp(-r_j / eps). Equals aew_weights(risks, n) for
/// eps = 1/n.
WeightVector entropy_minimizer(std::span<const double> risks, double epsilon);

/// Cumulative exponential weights: average over prefixes k = 1..n of the
/// exponential weights built from the prefix risks A_k, in sample order.
/// One forward pass, O(nM).
WeightVector caew_weights(const Loss& loss, const FunctionClass& cls,
                          const LabeledSample& sample);

WeightVector compute_weights(Procedure proc, const Loss& loss,
                             const FunctionClass& cls, const LabeledSample& sample);

/// Pointwise convex combination sum_j w_j f_j, clamped to [-1,1] against
/// float round-off.
Rule aggregate_rule(const WeightVector& w, const FunctionClass& cls);

}  // namespace agg
