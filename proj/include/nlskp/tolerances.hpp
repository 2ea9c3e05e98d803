#pragma once

namespace nlskp {

struct Tolerances {
    double root = 1e-12;   ///< relative residual for monotone root finding: root * max(1, |g(t,v)|)
    double check = 1e-9;   ///< slack for constraint, support and inequality checks
    double sep = 1e-9;     ///< minimal admissible separation alpha; envelope gap slack
    double fix = 1e-10;    ///< coupled fixed point: sup-norm change between sweeps
    int max_iter = 200;    ///< bisection steps
    int max_sweeps = 100;  ///< coupled fixed point sweeps
};

}  // namespace nlskp
