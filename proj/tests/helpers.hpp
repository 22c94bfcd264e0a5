#pragma once

#include <random>
#include <vector>

#include "agg/aggregates.hpp"
#include "agg/distribution.hpp"

namespace aggtest {

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
}

inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
}

inline agg::FiniteDistribution random_distribution(std::mt19937_64& gen,
                                                   std::size_t max_atoms = 6,
                                                   double eta_lo = 0.0,
                                                   double eta_hi = 1.0) {
    const std::size_t n = 1 + uniform_index(gen, max_atoms);
    std::vector<double> masses(n), etas(n);
    double total = 0.0;
    for (double& p : masses) {
        p = uniform(gen, 0.01, 1.0);
        total += p;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        masses[j] /= total;
        acc += masses[j];
    }
    masses[n - 1] = 1.0 - acc;  // exact normalization
    for (double& e : etas) e = uniform(gen, eta_lo, eta_hi);
    return agg::FiniteDistribution(std::move(masses), std::move(etas));
}

inline agg::Rule random_rule(std::mt19937_64& gen, std::size_t n_atoms) {
    std::vector<double> values(n_atoms);
    for (double& v : values) v = uniform(gen, -1.0, 1.0);
    return agg::Rule(std::move(values));
}

inline agg::Rule random_prediction_rule(std::mt19937_64& gen, std::size_t n_atoms) {
    std::vector<double> values(n_atoms);
    for (double& v : values) v = gen() & 1 ? 1.0 : -1.0;
    return agg::Rule(std::move(values));
}

inline agg::FunctionClass random_prediction_class(std::mt19937_64& gen,
                                                  std::size_t m, std::size_t n_atoms) {
    std::vector<agg::Rule> rules;
    rules.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        rules.push_back(random_prediction_rule(gen, n_atoms));
    return agg::FunctionClass(std::move(rules));
}

inline agg::LabeledSample random_sample(std::mt19937_64& gen, std::size_t n,
                                        std::size_t n_atoms) {
    agg::LabeledSample sample;
    sample.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        sample.entries.push_back({uniform_index(gen, n_atoms), gen() & 1 ? 1 : -1});
    return sample;
}

}  // namespace aggtest
