#include "agg/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace agg {

double remainder(std::size_t n, const BoundSpec& spec) {
    if (n < 1) throw std::invalid_argument("remainder: n must be >= 1");
    if (spec.delta < 0.0) throw std::invalid_argument("remainder: delta must be >= 0");
    const double logM = std::log(static_cast<double>(spec.M));
    const double ratio = logM / static_cast<double>(n);
    const double expo = spec.kappa / (2.0 * spec.kappa - 1.0);
    return std::sqrt(std::pow(spec.delta, 1.0 / spec.kappa) * ratio) +
           std::pow(ratio, expo);
}

double theorem1_constant(double kappa, double c, Procedure procedure) {
    if (kappa < 1.0) throw std::invalid_argument("theorem1_constant: kappa must be >= 1");
    const double base =
        32.0 * std::max({6.0, 537.0 * c, 16.0 * (2.0 * c + 1.0 / 3.0)});
    if (procedure != Procedure::CAEW) return base;
    if (kappa == 1.0)
        throw std::invalid_argument(
            "theorem1_constant: CAEW with kappa = 1 has a log n residual; use "
            "caew_kappa1_residual");
    return base * std::max(2.0, (2.0 * kappa - 1.0) / (kappa - 1.0));
}

double caew_kappa1_residual(std::size_t n, std::size_t M, double delta, double c) {
    const double C = theorem1_constant(1.0, c, Procedure::ERM);
    const double logM = std::log(static_cast<double>(M));
    const double nn = static_cast<double>(n);
    return 2.0 * C * (std::sqrt(delta * logM / nn) + logM * std::log(nn) / nn);
}

double theorem2_constant(double kappa, double c) {
    if (kappa < 1.0 || c <= 0.0)
        throw std::invalid_argument("theorem2_constant: need kappa >= 1 and c > 0");
    const double e1 = -2.0 * kappa * (kappa - 1.0) / (2.0 * kappa - 1.0);
    const double e2 = -kappa / (2.0 * kappa - 1.0);
    return std::pow(c, kappa) / (4.0 * std::exp(1.0)) * std::pow(2.0, e1) *
           std::pow(std::log(2.0), e2);
}

double mu_of_M(std::size_t M) {
    if (M < 2) throw std::invalid_argument("mu_of_M: M must be >= 2");
    const double target = 3.0 * static_cast<double>(M);
    double mu = std::log(target);
    for (int iter = 0; iter < 100; ++iter) {
        const double emu = std::exp(mu);
        const double g = mu * emu - target;
        if (std::abs(g) <= 1e-12 * target) return mu;
        mu -= g / (emu * (1.0 + mu));
    }
    throw std::runtime_error("mu_of_M: Newton iteration did not converge");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Fast: return "fast";
        case Regime::Intermediate: return "intermediate";
        case Regime::Slow: return "slow";
    }
    return "?";
}

Regime regime(std::size_t n, std::size_t M, double kappa, double delta,
              double slow_threshold) {
    if (delta < 0.0) throw std::invalid_argument("regime: delta must be >= 0");
    const double fast_cut =
        std::pow(std::log(static_cast<double>(M)) / static_cast<double>(n),
                 kappa / (2.0 * kappa - 1.0));
    if (delta <= fast_cut) return Regime::Fast;
    if (delta >= slow_threshold) return Regime::Slow;
    return Regime::Intermediate;
}

double corollary1_bound(std::size_t n, std::size_t M, double kappa, double a,
                        double c, Procedure procedure) {
    if (!(a > 0.0)) throw std::invalid_argument("corollary1_bound: a must be > 0");
    const double C = theorem1_constant(kappa, c, procedure);
    const double coeff =
        C + std::pow(std::pow(C, 2.0 * kappa) / a, 1.0 / (2.0 * kappa - 1.0));
    return coeff * std::pow(std::log(static_cast<double>(M)) / static_cast<double>(n),
                            kappa / (2.0 * kappa - 1.0));
}

}  // namespace agg
