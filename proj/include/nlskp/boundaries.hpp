#pragma once

#include "nlskp/pathkit.hpp"
#include "nlskp/tolerances.hpp"

#include <string>

namespace nlskp {

enum class Family {
    Linear,  ///< g(t,x) = x - b_t
    Scaled,  ///< g(t,x) = a (x - b_t)
    Sine,    ///< g(t,x) = x + eps sin(omega x) - b_t
};

std::string to_string(Family family);

/// Constraint function g(t, x), strictly increasing and bi-Lipschitz in x:
/// c |x - y| <= |g(t,x) - g(t,y)| <= C |x - y| with c, C known in closed form.
/// The time dependence enters only through the offset path b.
class BoundaryFunction {
public:
    static BoundaryFunction linear(CadlagPath offset);
    static BoundaryFunction scaled(double a, CadlagPath offset);
    static BoundaryFunction sine(double eps, double omega, CadlagPath offset);

    Family family() const { return family_; }
    const CadlagPath& offset() const { return offset_; }
    double scale() const { return scale_; }
    double eps() const { return eps_; }
    double omega() const { return omega_; }
    double lower_lipschitz() const { return c_; }
    double upper_lipschitz() const { return C_; }

    double operator()(double t, double x) const;

    /// Same family and parameters, different offset.
    BoundaryFunction with_offset(CadlagPath offset) const;

    /// True when two functions differ at most through their offsets.
    bool same_shape(const BoundaryFunction& other) const;

private:
    BoundaryFunction(Family family, double scale, double eps, double omega, CadlagPath offset);

    Family family_;
    double scale_;
    double eps_;
    double omega_;
    double c_;
    double C_;
    CadlagPath offset_;
};

double eval_boundary(const BoundaryFunction& g, double t, double x);

/// Unique x* with g(t, v + x*) = 0. Affine families are solved in closed form; the sine
/// family is bisected on the bracket {-g(t,v)/c, -g(t,v)/C}.
double invert_offset(const BoundaryFunction& g, double t, double v, const Tolerances& tol = {});

/// sup_x |g(t,x) - g(s,x)|, exact for the shipped families.
double temporal_gap(const BoundaryFunction& g, double t, double s);

/// Lower constraint L and upper activation R with L <= R; admissible states satisfy
/// L(t, x) <= 0 <= R(t, x). Both share family and shape, so R - L does not depend on x.
class BoundaryPair {
public:
    BoundaryPair(BoundaryFunction lower_constraint, BoundaryFunction upper_activation,
                 const Tolerances& tol = {});

    const BoundaryFunction& L() const { return L_; }
    const BoundaryFunction& R() const { return R_; }
    /// inf_t (R - L)(t, .)
    double alpha() const { return alpha_; }
    /// (R - L)(t, .) evaluated from the offsets.
    double gap(double t) const;
    /// Union of both offset grids.
    TimeGrid offset_grid() const;
    double lower_lipschitz() const { return L_.lower_lipschitz(); }
    double upper_lipschitz() const { return L_.upper_lipschitz(); }

    /// Boundaries of the problem restarted at time d: (t, x) -> g(t + d, x).
    BoundaryPair shifted(double d) const;

private:
    BoundaryFunction L_;
    BoundaryFunction R_;
    double alpha_;
};

struct ValidationReport {
    bool passed = true;
    double worst_monotonicity = 0.0;  ///< largest sampled g(x) - g(y) for x < y (should be < 0)
    double worst_sandwich = 0.0;      ///< largest sampled excursion of the difference quotient outside [c, C]
    double min_separation = 0.0;      ///< smallest sampled R - L
    std::string details;
};

/// Sampled smoke test of the structural assumptions on a time grid and x-range. It can
/// refute but never certify them.
ValidationReport validate_assumption(const BoundaryFunction& L, const BoundaryFunction& R, const TimeGrid& grid,
                                     double x_lo, double x_hi, Index samples, const Tolerances& tol = {});
ValidationReport validate_assumption(const BoundaryPair& pair, const TimeGrid& grid, double x_lo, double x_hi,
                                     Index samples, const Tolerances& tol = {});

}  // namespace nlskp
