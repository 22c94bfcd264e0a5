#include "agg/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace agg {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kIdentityTol = 1e-12;

double uniform01(std::mt19937_64& gen) {
    // 53-bit mantissa draw; fixed across platforms, unlike
    // std::uniform_real_distribution.
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

Rule::Rule(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!(v >= -1.0 && v <= 1.0))
            throw std::invalid_argument("Rule: value outside [-1,1]");
    }
}

Rule Rule::constant(double value, std::size_t n_atoms) {
    return Rule(std::vector<double>(n_atoms, value));
}

double Rule::operator()(AtomId a) const {
    if (a >= values_.size())
        throw std::domain_error("Rule: undefined at atom " + std::to_string(a));
    return values_[a];
}

bool Rule::is_prediction_rule() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v == 1.0 || v == -1.0; });
}

FiniteDistribution::FiniteDistribution(std::vector<double> masses,
                                       std::vector<double> etas)
    : masses_(std::move(masses)), etas_(std::move(etas)) {
    if (masses_.empty() || masses_.size() != etas_.size())
        throw std::invalid_argument(
            "FiniteDistribution: masses and etas must have equal length >= 1");
    double total = 0.0;
    for (double p : masses_) {
        if (p < 0.0) throw std::invalid_argument("FiniteDistribution: negative mass");
        total += p;
    }
    if (std::abs(total - 1.0) > kMassTol)
        throw std::invalid_argument("FiniteDistribution: masses do not sum to 1");
    for (double e : etas_) {
        if (!(e >= 0.0 && e <= 1.0))
            throw std::invalid_argument("FiniteDistribution: eta outside [0,1]");
    }

    std::vector<double> star(n_atoms());
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        star[j] = static_cast<double>(sign(2.0 * etas_[j] - 1.0));
        bayes_risk_ += masses_[j] * std::min(etas_[j], 1.0 - etas_[j]);
    }
    bayes_rule_ = Rule(std::move(star));
}

double FiniteDistribution::zero_one_risk(const Rule& f) const {
    if (f.size() < n_atoms())
        throw std::domain_error("zero_one_risk: rule not defined on all atoms");
    double r = 0.0;
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        const int s = sign(f(j));
        r += masses_[j] * (s == 1 ? 1.0 - etas_[j] : etas_[j]);
    }
    return r;
}

double FiniteDistribution::hinge_risk(const Rule& f) const {
    if (f.size() < n_atoms())
        throw std::domain_error("hinge_risk: rule not defined on all atoms");
    double a = 0.0;
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        const double v = f(j);
        a += masses_[j] * (etas_[j] * std::max(1.0 - v, 0.0) +
                           (1.0 - etas_[j]) * std::max(1.0 + v, 0.0));
    }
    return a;
}

double FiniteDistribution::excess_hinge(const Rule& f) const {
    const double direct = hinge_risk(f) - optimal_hinge_risk();
    double identity = 0.0;
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        identity += masses_[j] * std::abs(2.0 * etas_[j] - 1.0) *
                    std::abs(f(j) - bayes_rule_(j));
    }
    if (std::abs(direct - identity) > kIdentityTol)
        throw std::logic_error("excess_hinge: direct and identity forms disagree");
    return direct;
}

double FiniteDistribution::relative_variance(const Rule& f) const {
    // Z = Y (f(X) - f*(X)); Y^2 = 1 so E[Z^2] = E[(f - f*)^2].
    double ez = 0.0, ez2 = 0.0;
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        const double d = f(j) - bayes_rule_(j);
        ez += masses_[j] * (2.0 * etas_[j] - 1.0) * d;
        ez2 += masses_[j] * d * d;
    }
    return ez2 - ez * ez;
}

MarginCheck FiniteDistribution::margin_constant(double kappa) const {
    if (kappa < 1.0)
        throw std::invalid_argument("margin_constant: kappa must be >= 1");

    // Margin values and the CDF of |2 eta - 1| restricted to positive mass.
    std::vector<std::pair<double, double>> jumps;  // (t, mass)
    for (std::size_t j = 0; j < n_atoms(); ++j) {
        if (masses_[j] > 0.0)
            jumps.emplace_back(std::abs(2.0 * etas_[j] - 1.0), masses_[j]);
    }
    std::sort(jumps.begin(), jumps.end());

    if (kappa == 1.0) {
        const double h = jumps.front().first;
        return {h > 0.0, h};
    }

    // The CDF is a step function; between jumps the ratio F(t)/t^{1/(kappa-1)}
    // is maximized at the left endpoint, so the sup is attained at jump points.
    if (jumps.front().first == 0.0)
        return {false, std::numeric_limits<double>::infinity()};
    const double expo = 1.0 / (kappa - 1.0);
    double cdf = 0.0, c1 = 0.0;
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        cdf += jumps[i].second;
        const double t = jumps[i].first;
        if (t >= 1.0) break;  // the condition only constrains t in (0,1)
        if (i + 1 < jumps.size() && jumps[i + 1].first == t) continue;
        c1 = std::max(c1, cdf / std::pow(t, expo));
    }
    return {true, c1};
}

double FiniteDistribution::mah_constant(double kappa) const {
    const MarginCheck mc = margin_constant(kappa);
    if (!mc.satisfiable) return std::numeric_limits<double>::infinity();
    if (kappa == 1.0) return 1.0 / mc.constant;
    // From A - A* >= ((kappa-1)/(2 c1 kappa))^{kappa-1} kappa^{-1} E^kappa.
    // The derivation needs P(|2 eta - 1| <= t) <= c1 t^{1/(kappa-1)} on all
    // of t > 0, not just (0,1), so c1 is clamped from below at 1.
    const double c1 = std::max(mc.constant, 1.0);
    return std::pow(kappa, 1.0 / kappa) *
           std::pow(2.0 * c1 * kappa / (kappa - 1.0), (kappa - 1.0) / kappa);
}

LabeledSample FiniteDistribution::sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    std::mt19937_64 gen(seed);
    LabeledSample out;
    out.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform01(gen);
        double acc = 0.0;
        AtomId atom = n_atoms() - 1;
        for (std::size_t j = 0; j < n_atoms(); ++j) {
            acc += masses_[j];
            if (u < acc) { atom = j; break; }
        }
        const int label = uniform01(gen) < etas_[atom] ? 1 : -1;
        out.entries.push_back({atom, label});
    }
    return out;
}

double hellinger_sq(const FiniteDistribution& d1, const FiniteDistribution& d2) {
    if (d1.n_atoms() != d2.n_atoms())
        throw std::invalid_argument("hellinger_sq: mismatched supports");
    double h2 = 0.0;
    for (std::size_t j = 0; j < d1.n_atoms(); ++j) {
        if (std::abs(d1.mass(j) - d2.mass(j)) > 1e-12)
            throw std::invalid_argument("hellinger_sq: marginal masses differ");
        const double a = std::sqrt(d1.eta(j)) - std::sqrt(d2.eta(j));
        const double b = std::sqrt(1.0 - d1.eta(j)) - std::sqrt(1.0 - d2.eta(j));
        h2 += d1.mass(j) * (a * a + b * b);
    }
    return h2;
}

double hellinger_sq_product(double h2, std::size_t n) {
    return 2.0 * (1.0 - std::pow(1.0 - h2 / 2.0, static_cast<double>(n)));
}

}  // namespace agg
