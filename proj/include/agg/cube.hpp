#pragma once

#include <cstddef>
#include <vector>

#include "agg/aggregates.hpp"
#include "agg/distribution.hpp"

namespace agg {

/// Parameters of the cube distribution family: N-1 atoms of mass w with
/// conditional probabilities (1 +/- h)/2 indexed by a sign vector, plus a
/// deterministic atom of mass 1 - (N-1) w.
struct CubeParams {
    std::size_t n = 0;       // sample size the parameters were chosen for
    std::size_t M = 0;       // class size
    double kappa = 1.0;
    std::size_t N = 0;       // atom count, ceil(log2 M)
    double h = 0.0;          // margin height in (0,1)
    double w = 0.0;          // per-atom mass in (0,1)
};

struct SignVector {
    std::vector<int> sigma;  // length N-1, entries in {-1,+1}

    std::size_t size() const { return sigma.size(); }
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const CubeParams& params);

/// The standard parameter choices: for kappa = 1, h = 1/2 and w = 4/n; for
/// kappa > 1, h = (N/n)^{(kappa-1)/(2kappa-1)} and w = 1/(n h^2), with
/// N = ceil(log2 M). All CubeParams invariants are verified.
CubeParams choose_params(std::size_t n, std::size_t M, double kappa);

/// All sign vectors of length len in lexicographic order with -1 < +1.
std::vector<SignVector> enumerate_sign_vectors(std::size_t len);

FiniteDistribution cube_distribution(const CubeParams& params, const SignVector& sigma);

/// The prediction rule sign(2 eta_sigma - 1): sigma_j on atom j, +1 on the
/// last atom.
Rule cube_sign_rule(const CubeParams& params, const SignVector& sigma);

/// First 2^{N-1} rules are the sign rules over the sign cube in
/// lexicographic order; the remaining M - 2^{N-1} are copies of the first.
FunctionClass hypercube_class(const CubeParams& params, std::size_t M);

/// Checks that a Hamming-distance-1 pair keeps the n-fold product Hellinger
/// distance below the ceiling 2(1 - 1/e).
bool pairwise_hellinger_ok(const CubeParams& params);

}  // namespace agg
