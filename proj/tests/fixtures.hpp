#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/pathkit.hpp"

#include <initializer_list>
#include <vector>

namespace fixtures {

inline nlskp::Vector vec(std::initializer_list<double> xs) {
    nlskp::Vector v(static_cast<nlskp::Index>(xs.size()));
    nlskp::Index i = 0;
    for (double x : xs) {
        v[i++] = x;
    }
    return v;
}

inline std::vector<double> stdvec(const nlskp::Vector& v) {
    return {v.data(), v.data() + v.size()};
}

inline nlskp::CadlagPath path(std::initializer_list<double> times, std::initializer_list<double> values) {
    return nlskp::CadlagPath(nlskp::TimeGrid(vec(times)), vec(values));
}

/// L = x - upper, R = x - lower with constant offsets.
inline nlskp::BoundaryPair linear_band(double lower, double upper) {
    using nlskp::BoundaryFunction;
    using nlskp::CadlagPath;
    return nlskp::BoundaryPair(BoundaryFunction::linear(CadlagPath::constant(upper)),
                               BoundaryFunction::linear(CadlagPath::constant(lower)));
}

/// S = (0, -0.5, -1.5) on {0, 1, 2} reflected into [0, 1].
inline nlskp::CadlagPath band_driver() {
    return path({0, 1, 2}, {0, -0.5, -1.5});
}

/// S = (0, 2) on {0, 1} against [0, 1]: the upper constraint binds.
inline nlskp::CadlagPath upper_driver() {
    return path({0, 1}, {0, 2});
}

}  // namespace fixtures
