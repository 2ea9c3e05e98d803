#include "nlskp/boundaries.hpp"

#include "nlskp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace nlskp {

std::string to_string(Family family) {
    switch (family) {
    case Family::Linear:
        return "linear";
    case Family::Scaled:
        return "scaled";
    case Family::Sine:
        return "sine";
    }
    return "unknown";
}

BoundaryFunction::BoundaryFunction(Family family, double scale, double eps, double omega, CadlagPath offset)
    : family_(family), scale_(scale), eps_(eps), omega_(omega), offset_(std::move(offset)) {
    switch (family_) {
    case Family::Linear:
        c_ = C_ = 1.0;
        break;
    case Family::Scaled:
        if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
            throw InputError("scaled boundary needs a positive finite scale a");
        }
        c_ = C_ = scale_;
        break;
    case Family::Sine: {
        if (!std::isfinite(eps_) || !std::isfinite(omega_)) {
            throw InputError("sine boundary needs finite eps and omega");
        }
        const double k = std::abs(eps_ * omega_);
        if (!(k < 1.0)) {
            throw InputError("sine boundary needs |eps * omega| < 1 (lower Lipschitz constant " +
                             std::to_string(1.0 - k) + " is not positive)");
        }
        c_ = 1.0 - k;
        C_ = 1.0 + k;
        break;
    }
    }
}

BoundaryFunction BoundaryFunction::linear(CadlagPath offset) {
    return BoundaryFunction(Family::Linear, 1.0, 0.0, 0.0, std::move(offset));
}

BoundaryFunction BoundaryFunction::scaled(double a, CadlagPath offset) {
    return BoundaryFunction(Family::Scaled, a, 0.0, 0.0, std::move(offset));
}

BoundaryFunction BoundaryFunction::sine(double eps, double omega, CadlagPath offset) {
    return BoundaryFunction(Family::Sine, 1.0, eps, omega, std::move(offset));
}

BoundaryFunction BoundaryFunction::with_offset(CadlagPath offset) const {
    return BoundaryFunction(family_, scale_, eps_, omega_, std::move(offset));
}

bool BoundaryFunction::same_shape(const BoundaryFunction& other) const {
    return family_ == other.family_ && scale_ == other.scale_ && eps_ == other.eps_ && omega_ == other.omega_;
}

double BoundaryFunction::operator()(double t, double x) const {
    const double b = eval(offset_, t);
    switch (family_) {
    case Family::Linear:
        return x - b;
    case Family::Scaled:
        return scale_ * (x - b);
    case Family::Sine:
        return x + eps_ * std::sin(omega_ * x) - b;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double eval_boundary(const BoundaryFunction& g, double t, double x) {
    return g(t, x);
}

double invert_offset(const BoundaryFunction& g, double t, double v, const Tolerances& tol) {
    if (g.family() != Family::Sine) {
        // a (v + x - b) = 0
        return eval(g.offset(), t) - v;
    }
    const double b = eval(g.offset(), t);
    auto h = [&](double x) {
        const double y = v + x;
        return y + g.eps() * std::sin(g.omega() * y) - b;
    };
    const double g0 = h(0.0);
    if (g0 == 0.0) {
        return 0.0;
    }
    const double limit = tol.root * std::max(1.0, std::abs(g0));
    double lo = std::min(-g0 / g.lower_lipschitz(), -g0 / g.upper_lipschitz());
    double hi = std::max(-g0 / g.lower_lipschitz(), -g0 / g.upper_lipschitz());
    double h_lo = h(lo);
    double h_hi = h(hi);
    for (int iter = 0; iter < tol.max_iter && h_lo != 0.0 && h_hi != 0.0; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;  // bracket collapsed to adjacent doubles
        }
        const double h_mid = h(mid);
        if (h_mid < 0.0) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
            h_hi = h_mid;
        }
    }
    const double best = std::abs(h_lo) <= std::abs(h_hi) ? lo : hi;
    const double residual = std::min(std::abs(h_lo), std::abs(h_hi));
    if (!(residual <= limit)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "root of sine boundary at t=" << t << ", v=" << v
            << " not found: residual " << residual << " > " << limit;
        throw NumericError(msg.str());
    }
    return best;
}

double temporal_gap(const BoundaryFunction& g, double t, double s) {
    return g.scale() * std::abs(eval(g.offset(), t) - eval(g.offset(), s));
}

BoundaryPair::BoundaryPair(BoundaryFunction lower_constraint, BoundaryFunction upper_activation,
                           const Tolerances& tol)
    : L_(std::move(lower_constraint)), R_(std::move(upper_activation)) {
    if (!L_.same_shape(R_)) {
        throw InputError("L and R must share family and shape parameters so that R - L is x-free");
    }
    const TimeGrid grid = offset_grid();
    alpha_ = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < grid.size(); ++i) {
        alpha_ = std::min(alpha_, gap(grid[i]));
    }
    if (!(alpha_ > tol.sep)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "separation inf(R - L) = " << alpha_ << " must exceed " << tol.sep;
        throw InputError(msg.str());
    }
}

double BoundaryPair::gap(double t) const {
    return L_.scale() * (eval(L_.offset(), t) - eval(R_.offset(), t));
}

TimeGrid BoundaryPair::offset_grid() const {
    return merge(L_.offset().grid(), R_.offset().grid());
}

BoundaryPair BoundaryPair::shifted(double d) const {
    return BoundaryPair(L_.with_offset(restrict_from(L_.offset(), d)),
                        R_.with_offset(restrict_from(R_.offset(), d)));
}

ValidationReport validate_assumption(const BoundaryFunction& L, const BoundaryFunction& R, const TimeGrid& grid,
                                     double x_lo, double x_hi, Index samples, const Tolerances& tol) {
    if (!(x_lo < x_hi) || samples < 2) {
        throw InputError("validate_assumption needs x_lo < x_hi and at least two samples");
    }
    ValidationReport report;
    report.worst_monotonicity = -std::numeric_limits<double>::infinity();
    report.min_separation = std::numeric_limits<double>::infinity();
    const Vector xs = Vector::LinSpaced(samples, x_lo, x_hi);
    for (Index i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        for (const BoundaryFunction* g : {&L, &R}) {
            for (Index k = 0; k + 1 < samples; ++k) {
                const double dx = xs[k + 1] - xs[k];
                const double dg = (*g)(t, xs[k + 1]) - (*g)(t, xs[k]);
                report.worst_monotonicity = std::max(report.worst_monotonicity, -dg);
                const double slope = dg / dx;
                const double excess =
                    std::max(g->lower_lipschitz() - slope, slope - g->upper_lipschitz());
                report.worst_sandwich = std::max(report.worst_sandwich, excess);
            }
        }
        for (Index k = 0; k < samples; ++k) {
            report.min_separation = std::min(report.min_separation, R(t, xs[k]) - L(t, xs[k]));
        }
    }
    std::ostringstream details;
    if (!(report.worst_monotonicity < 0.0)) {
        report.passed = false;
        details << "not strictly increasing; ";
    }
    if (report.worst_sandwich > tol.check) {
        report.passed = false;
        details << "Lipschitz sandwich violated by " << report.worst_sandwich << "; ";
    }
    if (!(report.min_separation > tol.check)) {
        report.passed = false;
        details << "separation " << report.min_separation << " not positive; ";
    }
    report.details = report.passed ? "ok" : details.str();
    return report;
}

ValidationReport validate_assumption(const BoundaryPair& pair, const TimeGrid& grid, double x_lo, double x_hi,
                                     Index samples, const Tolerances& tol) {
    return validate_assumption(pair.L(), pair.R(), grid, x_lo, x_hi, samples, tol);
}

}  // namespace nlskp
