#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace agg {

using AtomId = std::size_t;

/// sign with the fixed convention sign(0) = +1.
inline int sign(double x) { return x < 0.0 ? -1 : 1; }

/// A real-valued function on a finite atom set, values in [-1,1].
/// Atom j maps to values()[j]. Prediction rules are the {-1,+1}-valued
/// special case.
class Rule {
public:
    Rule() = default;
    explicit Rule(std::vector<double> values);

    static Rule constant(double value, std::size_t n_atoms);

    double operator()(AtomId a) const;
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    bool is_prediction_rule() const;

private:
    std::vector<double> values_;
};

struct LabeledSample {
    struct Entry {
        AtomId atom;
        int label;  // -1 or +1
    };
    std::vector<Entry> entries;

    std::size_t size() const { return entries.size(); }
};

/// Result of checking the polynomial margin condition at a given kappa.
/// For kappa > 1, `constant` is the smallest c1 with
/// P(|2 eta - 1| <= t) <= c1 t^{1/(kappa-1)} on (0,1).
/// For kappa = 1, `constant` is the essential lower bound h of |2 eta - 1|.
struct MarginCheck {
    bool satisfiable = false;
    double constant = 0.0;
};

/// A joint law on {atoms} x {-1,+1} given by atom masses and conditional
/// probabilities eta_j = P(Y=1 | X = x_j). Immutable; the Bayes rule and
/// the Bayes/optimal-hinge risks are computed once at construction.
class FiniteDistribution {
public:
    FiniteDistribution(std::vector<double> masses, std::vector<double> etas);

    std::size_t n_atoms() const { return masses_.size(); }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<double>& etas() const { return etas_; }
    double mass(AtomId a) const { return masses_.at(a); }
    double eta(AtomId a) const { return etas_.at(a); }

    const Rule& bayes_rule() const { return bayes_rule_; }
    double bayes_risk() const { return bayes_risk_; }
    /// A* = 2 R*; the hinge infimum, attained by the Bayes rule.
    double optimal_hinge_risk() const { return 2.0 * bayes_risk_; }

    /// P(Y != sign(f(X))); real-valued rules are evaluated through sign.
    double zero_one_risk(const Rule& f) const;
    double hinge_risk(const Rule& f) const;

    /// A(f) - A*, cross-checked against E[|2 eta - 1| |f - f*|] to 1e-12.
    double excess_hinge(const Rule& f) const;

    /// Exact variance of Y (f(X) - f*(X)).
    double relative_variance(const Rule& f) const;

    MarginCheck margin_constant(double kappa) const;
    /// Constructive constant c in E|f - f*| <= c (A(f)-A*)^{1/kappa},
    /// derived from margin_constant. Infinity when the margin check fails.
    double mah_constant(double kappa) const;

    LabeledSample sample(std::size_t n, std::uint64_t seed) const;

private:
    std::vector<double> masses_;
    std::vector<double> etas_;
    Rule bayes_rule_;
    double bayes_risk_ = 0.0;
};

/// Squared Hellinger distance between two laws sharing atoms and masses.
double hellinger_sq(const FiniteDistribution& d1, const FiniteDistribution& d2);

/// H^2 between n-fold products: 2 (1 - (1 - h2/2)^n).
double hellinger_sq_product(double h2, std::size_t n);

}  // namespace agg
