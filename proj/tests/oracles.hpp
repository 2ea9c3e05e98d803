#pragma once

// Independent reference computations for the tests. Nothing here calls the library's solvers;
// inputs and outputs are plain vectors.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

/// Min and max of v[i..j] by direct scan.
inline std::pair<double, double> window_extrema(const Vec& v, std::size_t i, std::size_t j) {
    double lo = v[i], hi = v[i];
    for (std::size_t k = i; k <= j; ++k) {
        lo = std::min(lo, v[k]);
        hi = std::max(hi, v[k]);
    }
    return {lo, hi};
}

/// Root of an increasing h by long-double bisection on [lo, hi] until the bracket stops shrinking.
inline double bisect(const std::function<long double(long double)>& h, long double lo, long double hi) {
    for (int it = 0; it < 400; ++it) {
        const long double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) {
            break;
        }
        (h(mid) < 0 ? lo : hi) = mid;
    }
    return static_cast<double>(lo + (hi - lo) / 2);
}

/// x with v + x + eps sin(omega (v + x)) = b, bracketed by |x| <= |b - v| + |eps| + 1.
inline double sine_root(double eps, double omega, double b, double v) {
    const long double width = std::abs(static_cast<long double>(b) - v) + std::abs(eps) + 1;
    return bisect(
        [&](long double x) {
            const long double y = static_cast<long double>(v) + x;
            return y + eps * std::sin(omega * y) - b;
        },
        -width, width);
}

/// Time-dependent interval [l, r] regulator written directly in terms of S, r and l:
/// K_t = -max( (S_0 - r_0)^+ ^ inf_{u<=t}(S_u - l_u), sup_{s<=t}[ (S_s - r_s) ^ inf_{s<=u<=t}(S_u - l_u) ] ).
inline Vec interval_regulator(const Vec& S, const Vec& r, const Vec& l) {
    const std::size_t n = S.size();
    Vec K(n);
    for (std::size_t t = 0; t < n; ++t) {
        double first = std::max(S[0] - r[0], 0.0);
        for (std::size_t u = 0; u <= t; ++u) {
            first = std::min(first, S[u] - l[u]);
        }
        double second = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s <= t; ++s) {
            double inner = S[s] - r[s];
            for (std::size_t u = s; u <= t; ++u) {
                inner = std::min(inner, S[u] - l[u]);
            }
            second = std::max(second, inner);
        }
        K[t] = -std::max(first, second) + 0.0;
    }
    return K;
}

/// Classical one-sided regulator at 0: K_t = sup_{s<=t} (S_s)^-.
inline Vec classical_regulator(const Vec& S) {
    Vec K(S.size());
    double run = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        run = std::max(run, -S[i]);
        K[i] = run;
    }
    return K;
}

/// Brute-force upper bound on the J1 distance of two step functions on [0, T]: piecewise-linear
/// time changes whose interior knots sit at the jumps of f and are sent to points of a uniform
/// mesh of the given step (in increasing order). Exhaustive, so only for a couple of jumps.
inline double j1_brute(const Vec& tf, const Vec& vf, const Vec& tg, const Vec& vg, double T, double mesh) {
    auto value = [](const Vec& t, const Vec& v, double x) {
        std::size_t k = 0;
        while (k + 1 < t.size() && t[k + 1] <= x) {
            ++k;
        }
        return v[k];
    };
    Vec jumps;
    for (std::size_t i = 1; i < tf.size(); ++i) {
        if (tf[i] < T) {
            jumps.push_back(tf[i]);
        }
    }
    Vec candidates;
    for (double y = mesh; y < T - 1e-12; y += mesh) {
        candidates.push_back(y);
    }
    double best = std::numeric_limits<double>::infinity();
    Vec image(jumps.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
        if (k == jumps.size()) {
            Vec u{0.0}, w{0.0};
            for (std::size_t i = 0; i < jumps.size(); ++i) {
                u.push_back(jumps[i]);
                w.push_back(image[i]);
            }
            u.push_back(T);
            w.push_back(T);
            auto lam = [&](double x) {
                std::size_t i = 0;
                while (i + 2 < u.size() && u[i + 1] <= x) {
                    ++i;
                }
                return w[i] + (w[i + 1] - w[i]) * (x - u[i]) / (u[i + 1] - u[i]);
            };
            auto inv = [&](double y) {
                std::size_t i = 0;
                while (i + 2 < w.size() && w[i + 1] <= y) {
                    ++i;
                }
                return u[i] + (u[i + 1] - u[i]) * (y - w[i]) / (w[i + 1] - w[i]);
            };
            double cost = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                cost = std::max(cost, std::abs(w[i] - u[i]));
            }
            // Both sides are constant between consecutive breakpoints; sample each open piece
            // at its midpoint and the endpoint T on its own.
            Vec points = u;
            for (double b : tg) {
                points.push_back(inv(b));
            }
            std::sort(points.begin(), points.end());
            cost = std::max(cost, std::abs(value(tf, vf, T) - value(tg, vg, T)));
            for (std::size_t i = 0; i + 1 < points.size(); ++i) {
                if (points[i + 1] - points[i] < 1e-12) {
                    continue;
                }
                const double probe = 0.5 * (points[i] + points[i + 1]);
                cost = std::max(cost, std::abs(value(tf, vf, probe) - value(tg, vg, lam(probe))));
            }
            best = std::min(best, cost);
            return;
        }
        for (std::size_t c = from; c < candidates.size(); ++c) {
            image[k] = candidates[c];
            rec(k + 1, c + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace oracle
