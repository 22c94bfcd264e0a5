#include "agg/cube.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace agg {

namespace {

std::size_t ceil_log2(std::size_t M) {
    std::size_t n = 1, bits = 0;
    while (n < M) { n *= 2; ++bits; }
    return bits;
}

}  // namespace

void validate(const CubeParams& p) {
    const auto fail = [](const std::string& constraint) {
        throw std::invalid_argument("cube parameters violate: " + constraint);
    };
    if (p.M < 3) fail("M >= 3");
    if (p.kappa < 1.0) fail("kappa >= 1");
    if (!(p.h > 0.0 && p.h < 1.0)) fail("h in (0,1)");
    if (!(p.w > 0.0 && p.w < 1.0)) fail("w in (0,1)");
    if (p.N < 2) fail("N >= 2");
    const double nm1w = static_cast<double>(p.N - 1) * p.w;
    if (nm1w > 1.0) fail("(N-1) w <= 1");
    if (p.kappa > 1.0 && nm1w > std::pow(p.h, 1.0 / (p.kappa - 1.0)))
        fail("(N-1) w <= h^{1/(kappa-1)}");
    if (p.w * (1.0 - std::sqrt(1.0 - p.h * p.h)) > 1.0 / static_cast<double>(p.n))
        fail("w (1 - sqrt(1 - h^2)) <= 1/n");
    if (2.0 * std::log2(static_cast<double>(p.M)) > static_cast<double>(p.n))
        fail("2 log2 M <= n");
}

CubeParams choose_params(std::size_t n, std::size_t M, double kappa) {
    CubeParams p;
    p.n = n;
    p.M = M;
    p.kappa = kappa;
    p.N = ceil_log2(M);
    if (kappa == 1.0) {
        p.h = 0.5;
        p.w = 4.0 / static_cast<double>(n);
    } else {
        p.h = std::pow(static_cast<double>(p.N) / static_cast<double>(n),
                       (kappa - 1.0) / (2.0 * kappa - 1.0));
        p.w = 1.0 / (static_cast<double>(n) * p.h * p.h);
    }
    validate(p);
    return p;
}

std::vector<SignVector> enumerate_sign_vectors(std::size_t len) {
    std::vector<SignVector> out;
    const std::size_t count = std::size_t{1} << len;
    out.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        SignVector sv;
        sv.sigma.resize(len);
        // lexicographic with -1 < +1: the first coordinate is the top bit
        for (std::size_t j = 0; j < len; ++j)
            sv.sigma[j] = (code >> (len - 1 - j)) & 1 ? 1 : -1;
        out.push_back(std::move(sv));
    }
    return out;
}

FiniteDistribution cube_distribution(const CubeParams& p, const SignVector& sigma) {
    validate(p);
    if (sigma.size() != p.N - 1)
        throw std::invalid_argument("cube_distribution: sigma must have length N-1");
    std::vector<double> masses(p.N, p.w);
    masses[p.N - 1] = 1.0 - static_cast<double>(p.N - 1) * p.w;
    std::vector<double> etas(p.N, 1.0);
    for (std::size_t j = 0; j + 1 < p.N; ++j) {
        if (sigma.sigma[j] != 1 && sigma.sigma[j] != -1)
            throw std::invalid_argument("cube_distribution: sigma entries must be +-1");
        etas[j] = (1.0 + sigma.sigma[j] * p.h) / 2.0;
    }
    return FiniteDistribution(std::move(masses), std::move(etas));
}

Rule cube_sign_rule(const CubeParams& p, const SignVector& sigma) {
    std::vector<double> values(p.N, 1.0);
    for (std::size_t j = 0; j + 1 < p.N; ++j)
        values[j] = static_cast<double>(sigma.sigma[j]);
    return Rule(std::move(values));
}

FunctionClass hypercube_class(const CubeParams& p, std::size_t M) {
    const std::size_t base = std::size_t{1} << (p.N - 1);
    if (base > M)
        throw std::invalid_argument("hypercube_class: 2^{N-1} exceeds M");
    std::vector<Rule> rules;
    rules.reserve(M);
    for (const SignVector& sv : enumerate_sign_vectors(p.N - 1))
        rules.push_back(cube_sign_rule(p, sv));
    while (rules.size() < M)
        rules.push_back(rules.front());
    return FunctionClass(std::move(rules));
}

bool pairwise_hellinger_ok(const CubeParams& p) {
    const double h2 = 2.0 * p.w * (1.0 - std::sqrt(1.0 - p.h * p.h));
    const double ceiling = 2.0 * (1.0 - std::exp(-1.0));
    return hellinger_sq_product(h2, p.n) <= ceiling + 1e-12;
}

}  // namespace agg
