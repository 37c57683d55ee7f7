#pragma once

#include <memory>
#include <span>
#include <vector>

namespace pap {

// Natural cubic spline through strictly increasing abscissae.
// Evaluation is const and thread-safe.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    std::span<const double> x() const { return x_; }
    std::span<const double> y() const { return y_; }

    // Throws DomainError outside [x_min, x_max].
    double operator()(double x) const;
    double derivative(double x) const;

private:
    struct Impl;
    void build();
    void check_range(double x) const;

    std::vector<double> x_, y_;
    std::shared_ptr<const Impl> impl_;  // immutable once built, so copies share it
};

}  // namespace pap
