#include "agg/aggregates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agg {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr double kTieRelTol = 1e-12;

}  // namespace

FunctionClass::FunctionClass(std::vector<Rule> rs) : rules(std::move(rs)) {
    if (rules.size() < 2)
        throw std::invalid_argument("FunctionClass: M must be >= 2");
    for (const Rule& r : rules) {
        if (r.size() != rules.front().size())
            throw std::invalid_argument("FunctionClass: rules must share a common domain");
    }
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("WeightVector: empty");
    double total = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw std::invalid_argument("WeightVector: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kSimplexTol)
        throw std::invalid_argument("WeightVector: weights do not sum to 1");
}

const char* procedure_name(Procedure p) {
    switch (p) {
        case Procedure::ERM: return "ERM";
        case Procedure::AERM: return "AERM";
        case Procedure::AEW: return "AEW";
        case Procedure::CAEW: return "CAEW";
    }
    return "?";
}

Procedure parse_procedure(const std::string& name) {
    if (name == "ERM") return Procedure::ERM;
    if (name == "AERM") return Procedure::AERM;
    if (name == "AEW") return Procedure::AEW;
    if (name == "CAEW") return Procedure::CAEW;
    throw std::invalid_argument("unknown procedure: " + name);
}

std::vector<double> empirical_risks(const Loss& loss, const FunctionClass& cls,
                                    const LabeledSample& sample) {
    std::vector<double> risks(cls.size());
    for (std::size_t j = 0; j < cls.size(); ++j)
        risks[j] = empirical_risk(loss, cls.rules[j], sample);
    return risks;
}

WeightVector erm_weights(std::span<const double> risks) {
    if (risks.size() < 2)
        throw std::invalid_argument("erm_weights: M must be >= 2");
    const auto it = std::min_element(risks.begin(), risks.end());
    std::vector<double> w(risks.size(), 0.0);
    w[static_cast<std::size_t>(it - risks.begin())] = 1.0;
    return WeightVector(std::move(w));
}

WeightVector aerm_weights(std::span<const double> risks) {
    if (risks.size() < 2)
        throw std::invalid_argument("aerm_weights: M must be >= 2");
    const double rmin = *std::min_element(risks.begin(), risks.end());
    // Risks of prediction rules are exact multiples of 2/n; the relative
    // tolerance absorbs float summation order in the tie detection.
    const double tol = kTieRelTol * std::max(1.0, std::abs(rmin));
    std::size_t count = 0;
    for (double r : risks)
        if (r - rmin <= tol) ++count;
    std::vector<double> w(risks.size(), 0.0);
    for (std::size_t j = 0; j < risks.size(); ++j)
        if (risks[j] - rmin <= tol) w[j] = 1.0 / static_cast<double>(count);
    return WeightVector(std::move(w));
}

WeightVector aew_weights(std::span<const double> risks, std::size_t n) {
    return entropy_minimizer(risks, 1.0 / static_cast<double>(n));
}

WeightVector entropy_minimizer(std::span<const double> risks, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("entropy_minimizer: epsilon must be > 0");
    if (risks.empty())
        throw std::invalid_argument("entropy_minimizer: empty risks");
    const double rmin = *std::min_element(risks.begin(), risks.end());
    std::vector<double> w(risks.size());
    double total = 0.0;
    for (std::size_t j = 0; j < risks.size(); ++j) {
        w[j] = std::exp(-(risks[j] - rmin) / epsilon);
        total += w[j];
    }
    for (double& x : w) x /= total;
    return WeightVector(std::move(w));
}

WeightVector caew_weights(const Loss& loss, const FunctionClass& cls,
                          const LabeledSample& sample) {
    const std::size_t n = sample.size();
    if (n == 0)
        throw std::invalid_argument("caew_weights: empty sample");
    const std::size_t m = cls.size();
    // Running loss sums S_j(k) = k * A_k(f_j); one forward pass over the
    // sample in its given order.
    std::vector<double> loss_sum(m, 0.0), acc(m, 0.0), term(m);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& e = sample.entries[k];
        for (std::size_t j = 0; j < m; ++j)
            loss_sum[j] += loss(e.label * cls.rules[j](e.atom));
        const double smin = *std::min_element(loss_sum.begin(), loss_sum.end());
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            term[j] = std::exp(-(loss_sum[j] - smin));
            total += term[j];
        }
        for (std::size_t j = 0; j < m; ++j)
            acc[j] += term[j] / total;
    }
    for (double& x : acc) x /= static_cast<double>(n);
    return WeightVector(std::move(acc));
}

WeightVector compute_weights(Procedure proc, const Loss& loss,
                             const FunctionClass& cls, const LabeledSample& sample) {
    if (proc == Procedure::CAEW) return caew_weights(loss, cls, sample);
    const std::vector<double> risks = empirical_risks(loss, cls, sample);
    switch (proc) {
        case Procedure::ERM: return erm_weights(risks);
        case Procedure::AERM: return aerm_weights(risks);
        default: return aew_weights(risks, sample.size());
    }
}

Rule aggregate_rule(const WeightVector& w, const FunctionClass& cls) {
    if (w.size() != cls.size())
        throw std::invalid_argument("aggregate_rule: weight/class length mismatch");
    std::vector<double> values(cls.n_atoms(), 0.0);
    for (std::size_t j = 0; j < cls.size(); ++j) {
        if (w[j] == 0.0) continue;
        for (std::size_t a = 0; a < values.size(); ++a)
            values[a] += w[j] * cls.rules[j](a);
    }
    for (double& v : values) v = clip(v);
    return Rule(std::move(values));
}

}  // namespace agg
