#pragma once

#include <functional>
#include <string>

#include "agg/distribution.hpp"

namespace agg {

inline double hinge(double x) { return x > 1.0 ? 0.0 : 1.0 - x; }

/// Projection onto [-1,1].
inline double clip(double x) { return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x); }

enum class LossKind { Hinge, ZeroOne, CustomConvex };

class Loss {
public:
    static Loss hinge_loss();
    /// 1{x <= 0}, so a rule outputting 0 against label +1 counts as an error.
    static Loss zero_one_loss();
    /// Convexity is spot-checked by midpoint inequality on a grid over [-3,3].
    static Loss custom_convex(std::function<double(double)> fn, std::string name);

    double operator()(double x) const { return eval_(x); }
    LossKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool is_convex() const { return kind_ != LossKind::ZeroOne; }

private:
    Loss(LossKind kind, std::function<double(double)> eval, std::string name)
        : kind_(kind), eval_(std::move(eval)), name_(std::move(name)) {}

    LossKind kind_;
    std::function<double(double)> eval_;
    std::string name_;
};

/// (1/n) sum_i loss(Y_i f(X_i)).
double empirical_risk(const Loss& loss, const Rule& f, const LabeledSample& sample);

}  // namespace agg
