#include "agg/losses.hpp"

#include <stdexcept>

namespace agg {

Loss Loss::hinge_loss() {
    return Loss(LossKind::Hinge, [](double x) { return hinge(x); }, "hinge");
}

Loss Loss::zero_one_loss() {
    return Loss(LossKind::ZeroOne, [](double x) { return x <= 0.0 ? 1.0 : 0.0; },
                "zero_one");
}

Loss Loss::custom_convex(std::function<double(double)> fn, std::string name) {
    // Midpoint spot check over [-3,3].
    for (int i = 0; i < 60; ++i) {
        const double a = -3.0 + 0.1 * i;
        const double b = a + 0.1;
        if (fn(0.5 * (a + b)) > 0.5 * (fn(a) + fn(b)) + 1e-9)
            throw std::invalid_argument("custom_convex: midpoint inequality fails near " +
                                        std::to_string(a));
    }
    return Loss(LossKind::CustomConvex, std::move(fn), std::move(name));
}

double empirical_risk(const Loss& loss, const Rule& f, const LabeledSample& sample) {
    if (sample.size() == 0)
        throw std::invalid_argument("empirical_risk: empty sample");
    double total = 0.0;
    for (const auto& e : sample.entries)
        total += loss(e.label * f(e.atom));
    return total / static_cast<double>(sample.size());
}

}  // namespace agg
