#pragma once

#include <cstddef>

#include "agg/aggregates.hpp"

namespace agg {

struct BoundSpec {
    double kappa = 1.0;
    std::size_t M = 3;
    double c = 1.0;           // margin constant for the hinge excess risk
    double delta = 0.0;       // oracle excess: min over the hull of A - A*
    Procedure procedure = Procedure::ERM;
};

/// sqrt(delta^{1/kappa} log M / n) + (log M / n)^{kappa/(2kappa-1)}.
double remainder(std::size_t n, const BoundSpec& spec);

/// C = 32 max(6, 537c, 16(2c + 1/3)); for CAEW with kappa > 1 multiplied by
/// max(2, (2kappa-1)/(kappa-1)). CAEW with kappa = 1 is not covered here;
/// use caew_kappa1_residual.
double theorem1_constant(double kappa, double c, Procedure procedure);

/// The kappa = 1 CAEW residual 2C (sqrt(delta log M / n) + (log M) log n / n).
double caew_kappa1_residual(std::size_t n, std::size_t M, double delta, double c);

/// C0 = c^kappa (4e)^{-1} 2^{-2kappa(kappa-1)/(2kappa-1)} (log 2)^{-kappa/(2kappa-1)}.
double theorem2_constant(double kappa, double c);

/// Unique positive root of mu e^mu = 3M, Newton from mu0 = log(3M),
/// converged to |mu e^mu - 3M| <= 1e-12 * 3M.
double mu_of_M(std::size_t M);

enum class Regime { Fast, Intermediate, Slow };

const char* regime_name(Regime r);

/// Fast if delta <= (log M / n)^{kappa/(2kappa-1)} (boundary counts as
/// fast); slow if delta >= slow_threshold; intermediate otherwise.
Regime regime(std::size_t n, std::size_t M, double kappa, double delta,
              double slow_threshold = 0.1);

/// The residual coefficient [C + (C^{2kappa}/a)^{1/(2kappa-1)}]
/// (log M / n)^{kappa/(2kappa-1)} with C = theorem1_constant.
double corollary1_bound(std::size_t n, std::size_t M, double kappa, double a,
                        double c, Procedure procedure = Procedure::ERM);

}  // namespace agg
