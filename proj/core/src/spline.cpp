#include "pap/spline.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "pap/errors.hpp"

namespace pap {

struct CubicSpline::Impl {
    gsl_interp* interp = nullptr;
    ~Impl() {
        if (interp) gsl_interp_free(interp);
    }
};

namespace {
void silence_gsl() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}
}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) throw DomainError("spline: x and y differ in length");
    if (x_.size() < 3) throw DomainError("spline: need at least 3 points");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw DomainError("spline: abscissae not strictly increasing");
    build();
}

void CubicSpline::build() {
    silence_gsl();
    auto impl = std::make_shared<Impl>();
    impl->interp = gsl_interp_alloc(gsl_interp_cspline, x_.size());
    if (!impl->interp || gsl_interp_init(impl->interp, x_.data(), y_.data(), x_.size()) != GSL_SUCCESS)
        throw DomainError("spline: GSL initialisation failed");
    impl_ = std::move(impl);
}

void CubicSpline::check_range(double x) const {
    if (empty()) throw DomainError("spline: empty");
    if (!(x >= x_.front() && x <= x_.back()))
        throw DomainError("spline: r = " + std::to_string(x) + " outside [" + std::to_string(x_.front()) + ", " +
                          std::to_string(x_.back()) + "]");
}

double CubicSpline::operator()(double x) const {
    check_range(x);
    return gsl_interp_eval(impl_->interp, x_.data(), y_.data(), x, nullptr);
}

double CubicSpline::derivative(double x) const {
    check_range(x);
    return gsl_interp_eval_deriv(impl_->interp, x_.data(), y_.data(), x, nullptr);
}

}  // namespace pap
