#include "nlskp/verify.hpp"

#include "nlskp/decomposition.hpp"
#include "nlskp/errors.hpp"
#include "nlskp/genpaths.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace nlskp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pos(double x) {
    return std::max(x, 0.0);
}

// Collects the excess of every asserted inequality and keeps the worst one.
class Tally {
public:
    Tally(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

    void excess(double amount, Index i, const char* what) {
        ++count_;
        if (amount > worst_ || (std::isnan(amount) && !std::isnan(worst_))) {
            worst_ = std::isnan(amount) ? kInf : amount;
            location_ = i;
            what_ = what;
        }
    }

    // Failure of an assertion that admits no slack.
    void mismatch(Index i, const char* what) { excess(kInf, i, what); }

    void note(const std::string& text) { notes_ += notes_.empty() ? text : "; " + text; }

    VerificationReport report() const {
        VerificationReport r;
        r.check_name = name_;
        r.tolerance = tol_;
        r.worst_violation = std::max(worst_, 0.0);
        r.passed = r.worst_violation <= tol_;
        std::ostringstream msg;
        msg << std::setprecision(6);
        if (r.passed) {
            msg << count_ << " assertions hold";
        } else {
            msg << what_ << " violated by " << r.worst_violation << " at index " << location_.value_or(-1);
        }
        if (!notes_.empty()) {
            msg << "; " << notes_;
        }
        r.details = msg.str();
        if (!r.passed || worst_ > 0.0) {
            r.location = location_;
        }
        return r;
    }

private:
    std::string name_;
    double tol_;
    double worst_ = 0.0;
    std::optional<Index> location_;
    std::string what_;
    std::string notes_;
    long long count_ = 0;
};

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

void require_same_grid(const CadlagPath& a, const CadlagPath& b, const char* what) {
    if (!(a.grid() == b.grid())) {
        throw InputError(std::string(what) + ": paths must share one grid");
    }
}

void require_same_horizon(double a, double b, const char* what) {
    if (a != b) {
        throw InputError(std::string(what) + ": horizons differ (" + fmt(a) + " vs " + fmt(b) + ")");
    }
}

void require_nu(const CadlagPath& nu, bool origin_zero) {
    if (origin_zero ? nu[0] != 0.0 : nu[0] < 0.0) {
        throw InputError(origin_zero ? "nu must start at 0" : "nu must be nonnegative");
    }
    for (Index i = 1; i < nu.size(); ++i) {
        if (nu[i] < nu[i - 1]) {
            throw InputError("nu must be nondecreasing (index " + std::to_string(i) + ")");
        }
    }
}

// Common grid of the two drivers and nu on [0, T].
TimeGrid comparison_grid(const CadlagPath& S1, const CadlagPath& S2, const CadlagPath& nu) {
    require_same_horizon(S1.grid().horizon(), S2.grid().horizon(), "comparison");
    const double T = S1.grid().horizon();
    if (nu.grid().horizon() < T) {
        throw InputError("comparison: nu must cover the driver horizon");
    }
    return truncate(merge(merge(S1.grid(), S2.grid()), nu.grid()), T);
}

void require_sandwich(const CadlagPath& S1, const CadlagPath& S2, const CadlagPath& nu) {
    if (S1[0] != 0.0 || S2[0] != 0.0) {
        throw InputError("comparison: drivers must start at 0");
    }
    require_nu(nu, false);
    for (Index i = 0; i < S1.size(); ++i) {
        if (!(S2[i] <= S1[i] && S1[i] <= S2[i] + nu[i])) {
            throw InputError("comparison: S2 <= S1 <= S2 + nu fails at index " + std::to_string(i));
        }
    }
}

CadlagPath plus_constant(const CadlagPath& S, double c0) {
    return S.with_values((S.values().array() + c0).matrix());
}

// lambda^{-1} of every instant of G. Cells of K o lambda are read off these preimages, never
// from lambda(m), so the refined grid and the lookup agree bit for bit.
Vector preimages(const TimeGrid& G, const TimeChange& lambda) {
    Vector pre(G.size());
    for (Index j = 0; j < G.size(); ++j) {
        pre[j] = lambda.inverse(G[j]);
    }
    pre[0] = 0.0;
    return pre;
}

// Index j of the cell [G_j, G_{j+1}) containing lambda(m).
Index image_index(const Vector& pre, double m) {
    const double* begin = pre.data();
    return static_cast<Index>(std::upper_bound(begin, begin + pre.size(), m) - begin) - 1;
}

TimeGrid j1_refined_grid(const TimeGrid& G, const TimeChange& lambda, const BoundaryPair& pair) {
    return merge(TimeGrid(preimages(G, lambda)), truncate(pair.offset_grid(), G.horizon()));
}

}  // namespace

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["check_name"] = check_name;
    j["passed"] = passed;
    if (std::isfinite(worst_violation)) {
        j["worst_violation"] = worst_violation;
    } else {
        j["worst_violation"] = "inf";
    }
    j["location"] = location ? nlohmann::json(*location) : nlohmann::json(nullptr);
    j["details"] = details;
    j["tolerance"] = tolerance;
    return j.dump();
}

// ---------------------------------------------------------------------------------------------
// TimeChange

TimeChange::TimeChange(TimeGrid knots, Vector values) : knots_(std::move(knots)), values_(std::move(values)) {
    if (values_.size() != knots_.size()) {
        throw InputError("time change needs one value per knot");
    }
    if (values_[0] != 0.0 || values_[values_.size() - 1] != knots_.horizon()) {
        throw InputError("time change must map 0 to 0 and T to T");
    }
    for (Index i = 1; i < values_.size(); ++i) {
        if (!(values_[i] > values_[i - 1])) {
            throw InputError("time change must be strictly increasing");
        }
    }
}

TimeChange TimeChange::identity(double horizon) {
    if (horizon == 0.0) {
        return TimeChange(TimeGrid(), Vector::Zero(1));
    }
    Vector t(2);
    t << 0.0, horizon;
    return TimeChange(TimeGrid(t), t);
}

TimeChange TimeChange::two_piece(double horizon, double from, double to) {
    if (!(from > 0.0 && from < horizon && to > 0.0 && to < horizon)) {
        throw InputError("two-piece time change needs 0 < from, to < T");
    }
    Vector u(3);
    Vector v(3);
    u << 0.0, from, horizon;
    v << 0.0, to, horizon;
    return TimeChange(TimeGrid(std::move(u)), std::move(v));
}

double TimeChange::operator()(double t) const {
    if (!(t >= 0.0 && t <= horizon())) {
        throw DomainError("time change evaluated outside [0, T]");
    }
    const Index k = knots_.locate(t);
    if (knots_[k] == t) {
        return values_[k];
    }
    const double w = (t - knots_[k]) / (knots_[k + 1] - knots_[k]);
    return values_[k] + w * (values_[k + 1] - values_[k]);
}

double TimeChange::inverse(double s) const {
    if (!(s >= 0.0 && s <= horizon())) {
        throw DomainError("inverse time change evaluated outside [0, T]");
    }
    const double* begin = values_.data();
    const Index k = static_cast<Index>(std::upper_bound(begin, begin + values_.size(), s) - begin) - 1;
    if (values_[k] == s) {
        return knots_[k];
    }
    const double w = (s - values_[k]) / (values_[k + 1] - values_[k]);
    return knots_[k] + w * (knots_[k + 1] - knots_[k]);
}

double TimeChange::distance_to_identity() const {
    return (values_ - knots_.times()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------------------------
// J1 distance between step paths

double j1_distance(const CadlagPath& f, const CadlagPath& g) {
    require_same_horizon(f.grid().horizon(), g.grid().horizon(), "j1_distance");
    const double T = f.grid().horizon();
    const double end_cost = std::abs(f[f.size() - 1] - g[g.size() - 1]);

    // Piece values on [0, T) and the interior jump times between them.
    auto pieces = [T](const CadlagPath& h, std::vector<double>& vals, std::vector<double>& edges) {
        vals.assign(1, h[0]);
        edges.assign(1, 0.0);
        for (Index i = 1; i < h.size() && h.time(i) < T; ++i) {
            if (h[i] != vals.back()) {
                vals.push_back(h[i]);
                edges.push_back(h.time(i));
            }
        }
        edges.push_back(T);
    };
    std::vector<double> fv, a, gv, b;
    pieces(f, fv, a);
    pieces(g, gv, b);
    if (T == 0.0) {
        return end_cost;
    }

    auto dist = [](double x, double lo, double hi) { return std::max({lo - x, x - hi, 0.0}); };
    const std::size_t p = fv.size();
    const std::size_t q = gv.size();
    std::vector<double> cost(p * q, kInf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return cost[i * q + j]; };
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            double best = (i == 0 && j == 0) ? 0.0 : kInf;
            if (i > 0) {  // f jumps at a[i] while g sits on piece j
                best = std::min(best, std::max(at(i - 1, j), dist(a[i], b[j], b[j + 1])));
            }
            if (j > 0) {  // g jumps at b[j] while f sits on piece i
                best = std::min(best, std::max(at(i, j - 1), dist(b[j], a[i], a[i + 1])));
            }
            if (i > 0 && j > 0) {  // jumps matched
                best = std::min(best, std::max(at(i - 1, j - 1), std::abs(a[i] - b[j])));
            }
            at(i, j) = std::max(best, std::abs(fv[i] - gv[j]));
        }
    }
    return std::max(at(p - 1, q - 1), end_cost);
}

// ---------------------------------------------------------------------------------------------
// Definition conformance

VerificationReport check_definition(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol) {
    Tally tally("definition", tol);
    const TimeGrid& grid = sol.grid();
    for (const CadlagPath* p : {&sol.Phi, &sol.Psi, &sol.K, &sol.X, &sol.Kr, &sol.Kl, &sol.TV}) {
        if (!(p->grid() == grid)) {
            tally.mismatch(0, "shared grid");
            return tally.report();
        }
    }
    for (Index i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (sol.X[i] != sol.S[i] + sol.K[i]) {
            tally.mismatch(i, "X = S + K");
        }
        tally.excess(pair.L()(t, sol.X[i]), i, "L(t, X) <= 0");
        tally.excess(-pair.R()(t, sol.X[i]), i, "R(t, X) >= 0");
        tally.excess(std::abs(sol.K[i] - (sol.Kr[i] - sol.Kl[i])), i, "K = Kr - Kl");
        const double prev_r = i > 0 ? sol.Kr[i - 1] : 0.0;
        const double prev_l = i > 0 ? sol.Kl[i - 1] : 0.0;
        tally.excess(prev_r - sol.Kr[i], i, "Kr nondecreasing from 0");
        tally.excess(prev_l - sol.Kl[i], i, "Kl nondecreasing from 0");
    }
    // K_{0-} = 0: the whole of K_0 is the first increment.
    tally.excess(std::abs(sol.Kr[0] - pos(sol.K[0])), 0, "Kr_0 = (K_0)^+");
    tally.excess(std::abs(sol.Kl[0] - pos(-sol.K[0])), 0, "Kl_0 = (K_0)^-");
    if (sol.K[0] > tol) {
        tally.excess(std::abs(pair.R()(0.0, sol.X[0])), 0, "K_0 > 0 only on R(0, X_0) = 0");
    } else if (sol.K[0] < -tol) {
        tally.excess(std::abs(pair.L()(0.0, sol.X[0])), 0, "K_0 < 0 only on L(0, X_0) = 0");
    }
    const SupportReport support = support_check(sol, pair, tol);
    for (const SupportViolation& v : support.violations) {
        tally.excess(std::abs(v.constraint_value), v.index,
                     v.component == 'r' ? "Kr increases only on R(t, X) = 0" : "Kl increases only on L(t, X) = 0");
    }
    return tally.report();
}

// ---------------------------------------------------------------------------------------------
// Non-anticipation

VerificationReport check_shift(const SkorokhodSolution& sol, const BoundaryPair& pair, double d,
                               const Tolerances& tol) {
    const auto j = sol.grid().find(d);
    if (!j) {
        throw DomainError("shift " + fmt(d) + " is not a grid instant of the solution");
    }
    Tally tally("shift", tol.check);
    const CadlagPath tail_S = shift_centered(sol.S, d);
    const CadlagPath driver = plus_constant(tail_S, sol.X[*j]);
    const SkorokhodSolution restarted = solve(driver, pair.shifted(d), tol);
    const CadlagPath tail_X = shift_plain(sol.X, d);
    const CadlagPath tail_K = shift_centered(sol.K, d);
    if (!(restarted.grid() == tail_X.grid())) {
        tally.mismatch(0, "restarted grid equals shifted grid");
        return tally.report();
    }
    double worst_abs = 0.0;
    for (Index i = 0; i < tail_X.size(); ++i) {
        const double dx = std::abs(restarted.X[i] - tail_X[i]);
        const double dk = std::abs(restarted.K[i] - tail_K[i]);
        worst_abs = std::max({worst_abs, dx, dk});
        tally.excess(dx, *j + i, "restarted X = H_d(X)");
        tally.excess(dk, *j + i, "restarted K = T_d(K)");
    }
    tally.note(worst_abs == 0.0 ? "tail reproduced bitwise" : "max deviation " + fmt(worst_abs));
    return tally.report();
}

// ---------------------------------------------------------------------------------------------
// Comparison

VerificationReport assess_comparison(const std::string& check_name, const ComparisonData& data, double tol) {
    require_same_grid(data.K1, data.K2, "comparison");
    require_same_grid(data.K1, data.X1, "comparison");
    require_same_grid(data.K1, data.X2, "comparison");
    require_same_grid(data.K1, data.nu, "comparison");
    Tally tally(check_name, tol);
    const double up = pos(data.c01 - data.c02);
    const double down = pos(data.c02 - data.c01);
    for (Index i = 0; i < data.K1.size(); ++i) {
        const double nu = data.nu[i];
        tally.excess(data.K1[i] - down - data.K2[i], i, "K1 - (c02-c01)^+ <= K2");
        tally.excess(data.K2[i] - (data.K1[i] + nu + up), i, "K2 <= K1 + nu + (c01-c02)^+");
        tally.excess(data.X2[i] - nu - down - data.X1[i], i, "X2 - nu - (c02-c01)^+ <= X1");
        tally.excess(data.X1[i] - (data.X2[i] + nu + up), i, "X1 <= X2 + nu + (c01-c02)^+");
    }
    return tally.report();
}

VerificationReport check_comparison_one_sided(const CadlagPath& S1, const CadlagPath& S2, double c01, double c02,
                                              const CadlagPath& nu, const BoundaryFunction& R,
                                              const Tolerances& tol) {
    const TimeGrid grid = comparison_grid(S1, S2, nu);
    const CadlagPath s1 = resample(S1, grid);
    const CadlagPath s2 = resample(S2, grid);
    require_sandwich(s1, s2, resample(nu, grid));
    OneSidedSolution a = solve_one_sided(plus_constant(s1, c01), R, tol);
    OneSidedSolution b = solve_one_sided(plus_constant(s2, c02), R, tol);
    CadlagPath n = resample(nu, a.K.grid());
    return assess_comparison("comparison_one_sided",
                             {std::move(a.K), std::move(b.K), std::move(a.X), std::move(b.X), std::move(n), c01, c02},
                             tol.check);
}

VerificationReport check_comparison_net(const CadlagPath& S1, const CadlagPath& S2, double c01, double c02,
                                        const CadlagPath& nu, const BoundaryPair& pair, const Tolerances& tol) {
    const TimeGrid grid = comparison_grid(S1, S2, nu);
    const CadlagPath s1 = resample(S1, grid);
    const CadlagPath s2 = resample(S2, grid);
    require_sandwich(s1, s2, resample(nu, grid));
    SkorokhodSolution a = solve(plus_constant(s1, c01), pair, tol);
    SkorokhodSolution b = solve(plus_constant(s2, c02), pair, tol);
    CadlagPath n = resample(nu, a.grid());
    return assess_comparison("comparison_net",
                             {std::move(a.K), std::move(b.K), std::move(a.X), std::move(b.X), std::move(n), c01, c02},
                             tol.check);
}

VerificationReport assess_split_comparison(const SplitComparisonData& data, double tol) {
    for (const CadlagPath* p : {&data.Kl1, &data.Kr2, &data.Kl2, &data.nu}) {
        require_same_grid(data.Kr1, *p, "split comparison");
    }
    Tally tally("comparison_split", tol);
    const double up = pos(data.c01 - data.c02);
    const double down = pos(data.c02 - data.c01);
    for (Index i = 0; i < data.Kr1.size(); ++i) {
        const double nu = data.nu[i];
        tally.excess(data.Kr1[i] - down - data.Kr2[i], i, "Kr1 - (c02-c01)^+ <= Kr2");
        tally.excess(data.Kr2[i] - (data.Kr1[i] + nu + up), i, "Kr2 <= Kr1 + nu + (c01-c02)^+");
        tally.excess(data.Kl2[i] - down - data.Kl1[i], i, "Kl2 - (c02-c01)^+ <= Kl1");
        tally.excess(data.Kl1[i] - (data.Kl2[i] + nu + up), i, "Kl1 <= Kl2 + nu + (c01-c02)^+");
    }
    return tally.report();
}

VerificationReport check_comparison_split(const CadlagPath& S2, double c01, double c02, const CadlagPath& nu,
                                          const BoundaryPair& pair, const Tolerances& tol) {
    if (nu.grid().horizon() < S2.grid().horizon()) {
        throw InputError("split comparison: nu must cover the driver horizon");
    }
    const TimeGrid grid = truncate(merge(S2.grid(), nu.grid()), S2.grid().horizon());
    const CadlagPath s2 = resample(S2, grid);
    const CadlagPath n = resample(nu, grid);
    if (s2[0] != 0.0) {
        throw InputError("split comparison: S2 must start at 0");
    }
    require_nu(n, true);
    const CadlagPath s1 = s2.with_values(s2.values() + n.values());
    SkorokhodSolution a = solve(plus_constant(s1, c01), pair, tol);
    SkorokhodSolution b = solve(plus_constant(s2, c02), pair, tol);
    CadlagPath nn = resample(n, a.grid());
    return assess_split_comparison(
        {std::move(a.Kr), std::move(a.Kl), std::move(b.Kr), std::move(b.Kl), std::move(nn), c01, c02}, tol.check);
}

VerificationReport assess_monotone_boundaries(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                              double tol) {
    const TimeGrid grid = merge(sol1.grid(), sol2.grid());
    const CadlagPath r1 = resample(sol1.Kr, grid);
    const CadlagPath l1 = resample(sol1.Kl, grid);
    const CadlagPath r2 = resample(sol2.Kr, grid);
    const CadlagPath l2 = resample(sol2.Kl, grid);
    Tally tally("monotone_boundaries", tol);
    for (Index i = 0; i < grid.size(); ++i) {
        tally.excess(r1[i] - r2[i], i, "Kr2 >= Kr1");
        tally.excess(l1[i] - l2[i], i, "Kl2 >= Kl1");
    }
    return tally.report();
}

VerificationReport check_monotone_boundaries(const CadlagPath& S, const BoundaryPair& pair1,
                                             const BoundaryPair& pair2, const Tolerances& tol) {
    if (!pair1.L().same_shape(pair2.L())) {
        throw InputError("monotone boundaries: pairs must share family and shape");
    }
    // Larger offset means a smaller boundary function for every shipped family.
    const TimeGrid offsets = merge(pair1.offset_grid(), pair2.offset_grid());
    for (Index i = 0; i < offsets.size(); ++i) {
        const double t = offsets[i];
        if (eval(pair1.R().offset(), t) > eval(pair2.R().offset(), t)) {
            throw InputError("monotone boundaries: R1 >= R2 fails at t = " + fmt(t));
        }
        if (eval(pair1.L().offset(), t) < eval(pair2.L().offset(), t)) {
            throw InputError("monotone boundaries: L1 <= L2 fails at t = " + fmt(t));
        }
    }
    return assess_monotone_boundaries(solve(S, pair1, tol), solve(S, pair2, tol), tol.check);
}

// ---------------------------------------------------------------------------------------------
// Continuity

VerificationReport assess_uniform_continuity(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                             const BoundaryPair& pair1, const BoundaryPair& pair2, double tol) {
    if (!pair1.L().same_shape(pair2.L())) {
        throw InputError("uniform continuity: pairs must share family and shape");
    }
    require_same_horizon(sol1.grid().horizon(), sol2.grid().horizon(), "uniform continuity");
    const TimeGrid grid = merge(sol1.grid(), sol2.grid());
    const double c = pair1.lower_lipschitz();
    const double C = pair1.upper_lipschitz();
    const double a = pair1.L().scale();

    auto on = [&grid](const CadlagPath& p) { return resample(p, grid); };
    const CadlagPath S1 = on(sol1.S), S2 = on(sol2.S);
    const CadlagPath Phi1 = on(sol1.Phi), Phi2 = on(sol2.Phi);
    const CadlagPath Psi1 = on(sol1.Psi), Psi2 = on(sol2.Psi);
    const CadlagPath K1 = on(sol1.K), K2 = on(sol2.K);

    double dS = 0.0, Lbar = 0.0, Rbar = 0.0;
    for (Index i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        dS = std::max(dS, std::abs(S1[i] - S2[i]));
        Lbar = std::max(Lbar, a * std::abs(eval(pair1.L().offset(), t) - eval(pair2.L().offset(), t)));
        Rbar = std::max(Rbar, a * std::abs(eval(pair1.R().offset(), t) - eval(pair2.R().offset(), t)));
    }
    const double bound_phi = C / c * dS + Lbar / c;
    const double bound_psi = C / c * dS + Rbar / c;
    const double bound_k = C / c * dS + std::max(Lbar, Rbar) / c;

    Tally tally("uniform_continuity", tol);
    double sup_k = 0.0;
    for (Index i = 0; i < grid.size(); ++i) {
        const double dk = std::abs(K1[i] - K2[i]);
        sup_k = std::max(sup_k, dk);
        tally.excess(std::abs(Phi1[i] - Phi2[i]) - bound_phi, i, "|Phi1 - Phi2| <= (C/c) sup|dS| + Lbar/c");
        tally.excess(std::abs(Psi1[i] - Psi2[i]) - bound_psi, i, "|Psi1 - Psi2| <= (C/c) sup|dS| + Rbar/c");
        tally.excess(dk - bound_k, i, "|K1 - K2| <= (C/c) sup|dS| + (Lbar v Rbar)/c");
    }
    tally.note("sup|dK| = " + fmt(sup_k) + ", bound = " + fmt(bound_k));
    return tally.report();
}

VerificationReport check_uniform_continuity(const CadlagPath& S1, const CadlagPath& S2, const BoundaryPair& pair1,
                                            const BoundaryPair& pair2, const Tolerances& tol) {
    if (!pair1.L().same_shape(pair2.L())) {
        throw InputError("uniform continuity: pairs must share family and shape");
    }
    require_same_horizon(S1.grid().horizon(), S2.grid().horizon(), "uniform continuity");
    return assess_uniform_continuity(solve(S1, pair1, tol), solve(S2, pair2, tol), pair1, pair2, tol.check);
}

VerificationReport assess_j1_bound(const SkorokhodSolution& sol, const SkorokhodSolution& sol_prime,
                                   const TimeChange& lambda, const BoundaryPair& pair, double tol) {
    const TimeGrid& G = sol.grid();
    const TimeGrid& M = sol_prime.grid();
    require_same_horizon(G.horizon(), M.horizon(), "j1 bound");
    require_same_horizon(G.horizon(), lambda.horizon(), "j1 bound: time change");
    const double c = pair.lower_lipschitz();
    const double C = pair.upper_lipschitz();

    const Vector pre = preimages(G, lambda);
    // Otherwise K o lambda could jump between refined instants.
    for (Index j = 0; j < G.size(); ++j) {
        if (!M.find(pre[j])) {
            throw InputError("j1 bound: refined grid does not contain lambda^{-1} of instant " + std::to_string(j));
        }
    }
    std::vector<Index> image(static_cast<std::size_t>(M.size()));
    for (Index m = 0; m < M.size(); ++m) {
        image[static_cast<std::size_t>(m)] = image_index(pre, M[m]);
    }

    double dS = 0.0, Lhat = 0.0, Rhat = 0.0;
    for (Index m = 0; m < M.size(); ++m) {
        const Index j = image[static_cast<std::size_t>(m)];
        dS = std::max(dS, std::abs(sol_prime.S[m] - sol.S[j]));
        Lhat = std::max(Lhat, temporal_gap(pair.L(), M[m], G[j]));
        Rhat = std::max(Rhat, temporal_gap(pair.R(), M[m], G[j]));
    }
    const double bound = std::max(Lhat, Rhat) / c + C / c * dS;

    Tally tally("j1_bound", tol);
    double lhs = 0.0;
    for (Index m = 0; m < M.size(); ++m) {
        const double d = std::abs(sol_prime.K[m] - sol.K[image[static_cast<std::size_t>(m)]]);
        lhs = std::max(lhs, d);
        tally.excess(d - bound, m, "|K'_t - K_lambda(t)| <= (Lhat v Rhat)/c + (C/c) sup|S' - S o lambda|");
    }
    tally.note("sup|K' - K o lambda| = " + fmt(lhs) + ", bound = " + fmt(bound));
    if (G.size() <= 12 && M.size() <= 12) {
        const double dp = j1_distance(sol_prime.K, sol.K);
        const double via_lambda = std::max(lambda.distance_to_identity(), lhs);
        tally.excess(dp - via_lambda, 0, "exact J1 distance <= per-lambda J1 cost");
        tally.note("dp J1 = " + fmt(dp) + " <= " + fmt(via_lambda));
    }
    return tally.report();
}

VerificationReport check_j1_bound(const CadlagPath& S, const CadlagPath& S_prime, const TimeChange& lambda,
                                  const BoundaryPair& pair, const Tolerances& tol) {
    const double T = S.grid().horizon();
    require_same_horizon(T, S_prime.grid().horizon(), "j1 bound");
    require_same_horizon(T, lambda.horizon(), "j1 bound: time change");
    SkorokhodSolution sol = solve(S, pair, tol);
    const TimeGrid M = merge(j1_refined_grid(sol.grid(), lambda, pair), S_prime.grid());
    SkorokhodSolution sol_prime = solve(resample(S_prime, M), pair, tol);
    return assess_j1_bound(sol, sol_prime, lambda, pair, tol.check);
}

VerificationReport check_j1_bound(const CadlagPath& S, const TimeChange& lambda, const BoundaryPair& pair,
                                  const Tolerances& tol) {
    const double T = S.grid().horizon();
    require_same_horizon(T, lambda.horizon(), "j1 bound: time change");
    SkorokhodSolution sol = solve(S, pair, tol);
    const TimeGrid M = j1_refined_grid(sol.grid(), lambda, pair);
    const Vector pre = preimages(sol.grid(), lambda);
    Vector values(M.size());
    for (Index m = 0; m < M.size(); ++m) {
        values[m] = sol.S[image_index(pre, M[m])];
    }
    SkorokhodSolution sol_prime = solve(CadlagPath(M, std::move(values)), pair, tol);
    return assess_j1_bound(sol, sol_prime, lambda, pair, tol.check);
}

// ---------------------------------------------------------------------------------------------
// Oscillation

VerificationReport check_oscillation_domination(const SkorokhodSolution& sol, double tol) {
    Tally tally("oscillation_domination", tol);
    const Index n = sol.K.size();
    const Vector& K = sol.K.values();
    const Vector& Phi = sol.Phi.values();
    const Vector& Psi = sol.Psi.values();
    if (n <= 512) {
        for (Index i = 0; i < n; ++i) {
            Extrema k{K[i], K[i]}, f{Phi[i], Phi[i]}, s{Psi[i], Psi[i]};
            for (Index j = i; j < n; ++j) {
                k = {std::min(k.min, K[j]), std::max(k.max, K[j])};
                f = {std::min(f.min, Phi[j]), std::max(f.max, Phi[j])};
                s = {std::min(s.min, Psi[j]), std::max(s.max, Psi[j])};
                tally.excess((k.max - k.min) - (f.max - f.min) - (s.max - s.min), j,
                             "osc K <= osc Phi + osc Psi");
            }
        }
    } else {
        Rng rng(0x05c111a7e5ULL);
        for (int w = 0; w < 20000; ++w) {
            Index i = static_cast<Index>(rng.bits() % static_cast<std::uint64_t>(n));
            Index j = static_cast<Index>(rng.bits() % static_cast<std::uint64_t>(n));
            if (i > j) {
                std::swap(i, j);
            }
            tally.excess(oscillation(sol.K, i, j) - oscillation(sol.Phi, i, j) - oscillation(sol.Psi, i, j), j,
                         "osc K <= osc Phi + osc Psi");
        }
        tally.note("20000 sampled windows");
    }
    return tally.report();
}

// ---------------------------------------------------------------------------------------------
// Solver self-consistency

VerificationReport check_oracle_equivalence(const SkorokhodSolution& sol) {
    Tally tally("oracle_equivalence", 0.0);
    const CadlagPath direct = reflect_direct(sol.Phi, sol.Psi);
    for (Index i = 0; i < direct.size(); ++i) {
        if (direct[i] != sol.K[i]) {
            tally.mismatch(i, "K = closed-form regulator (bitwise)");
        }
    }
    return tally.report();
}

VerificationReport check_representation(const SkorokhodSolution& sol) {
    Tally tally("representation", 0.0);
    const OscillationSchedule sched = oscillation_times(sol.Phi, sol.Psi);
    const CadlagPath pieces = piecewise_representation(sol.Phi, sol.Psi, sched);
    for (Index i = 0; i < pieces.size(); ++i) {
        if (pieces[i] != sol.K[i]) {
            tally.mismatch(i, "K = piecewise representation (bitwise)");
        }
    }
    for (Index s : sched.sigmas) {
        if (sol.K[s] != sol.Phi[s]) {
            tally.mismatch(s, "K = Phi at sigma_k");
        }
    }
    const std::size_t first = sched.case_tag == ScheduleCase::UpperFirst ? 1 : 0;
    for (std::size_t k = first; k < sched.taus.size(); ++k) {
        const Index t = sched.taus[k];
        if (sol.K[t] != sol.Psi[t]) {
            tally.mismatch(t, "K = Psi at tau_k");
        }
    }
    tally.note("case " + to_string(sched.case_tag) + ", " + std::to_string(sched.sigmas.size()) + " sigmas, " +
               std::to_string(sched.taus.size()) + " taus");
    return tally.report();
}

VerificationReport check_separation(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol) {
    Tally tally("separation", tol);
    const double floor = pair.alpha() / pair.upper_lipschitz();
    double worst = kInf;
    for (Index i = 0; i < sol.Phi.size(); ++i) {
        const double gap = sol.Phi[i] - sol.Psi[i];
        worst = std::min(worst, gap);
        tally.excess(floor - gap, i, "Phi - Psi >= alpha / C");
    }
    tally.note("min(Phi - Psi) = " + fmt(worst) + ", alpha / C = " + fmt(floor));
    return tally.report();
}

VerificationReport check_coupled_fixpoint(const SkorokhodSolution& sol, const BoundaryPair& pair,
                                          const Tolerances& tol) {
    Tally tally("coupled_fixpoint", tol.fix);
    CoupledFixpoint fp;
    try {
        fp = coupled_fixpoint(sol.S, pair, tol);
    } catch (const NumericError& e) {
        tally.mismatch(0, "convergence");
        tally.note(e.what());
        return tally.report();
    }
    if (!(fp.Kr.grid() == sol.grid())) {
        tally.mismatch(0, "fixed point on the solution grid");
        return tally.report();
    }
    for (Index i = 0; i < fp.Kr.size(); ++i) {
        tally.excess(std::abs(fp.Kr[i] - sol.Kr[i]), i, "fixed-point Kr = split Kr");
        tally.excess(std::abs(fp.Kl[i] - sol.Kl[i]), i, "fixed-point Kl = split Kl");
    }
    tally.note(std::to_string(fp.sweeps) + " sweeps");
    return tally.report();
}

}  // namespace nlskp
