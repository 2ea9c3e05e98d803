#include "nlskp/reflector.hpp"

#include "nlskp/decomposition.hpp"
#include "nlskp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace nlskp {

namespace {

void require_ordered_envelopes(const CadlagPath& Phi, const CadlagPath& Psi) {
    if (!(Phi.grid() == Psi.grid())) {
        throw DomainError("envelopes must share one grid");
    }
    for (Index i = 0; i < Phi.size(); ++i) {
        if (!(Phi[i] > Psi[i])) {
            std::ostringstream msg;
            msg << std::setprecision(17) << "envelope order violated at index " << i << ": Phi=" << Phi[i]
                << " <= Psi=" << Psi[i];
            throw DomainError(msg.str());
        }
    }
}

// Clears the sign of a zero so that lattice selections compare equal bit for bit.
double canonical(double x) {
    return x + 0.0;
}

}  // namespace

TimeGrid solution_grid(const CadlagPath& S, const BoundaryPair& pair) {
    return truncate(merge(S.grid(), pair.offset_grid()), S.grid().horizon());
}

Envelopes envelopes(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol) {
    const TimeGrid grid = solution_grid(S, pair);
    const CadlagPath driver = resample(S, grid);
    Vector phi(grid.size());
    Vector psi(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        phi[i] = invert_offset(pair.L(), grid[i], driver[i], tol);
        psi[i] = invert_offset(pair.R(), grid[i], driver[i], tol);
    }
    return {CadlagPath(grid, std::move(phi)), CadlagPath(grid, std::move(psi))};
}

CadlagPath reflect_direct(const CadlagPath& Phi, const CadlagPath& Psi) {
    require_ordered_envelopes(Phi, Psi);
    const Index n = Phi.size();
    Vector K(n);
    const double start = std::max(-Phi[0], 0.0);
    for (Index t = 0; t < n; ++t) {
        // head = (-Phi_0)^+ ^ inf_{r in [0,t]} (-Psi_r)
        double inf_all = -Psi[0];
        for (Index r = 1; r <= t; ++r) {
            inf_all = std::min(inf_all, -Psi[r]);
        }
        const double head = std::min(start, inf_all);
        // tail = sup_{s in [0,t]} [ (-Phi_s) ^ inf_{r in [s,t]} (-Psi_r) ]
        double tail = -std::numeric_limits<double>::infinity();
        double inner = std::numeric_limits<double>::infinity();
        for (Index s = t; s >= 0; --s) {
            inner = std::min(inner, -Psi[s]);
            tail = std::max(tail, std::min(-Phi[s], inner));
        }
        K[t] = canonical(-std::max(head, tail));
    }
    return Phi.with_values(std::move(K));
}

CadlagPath reflect_stream(const CadlagPath& Phi, const CadlagPath& Psi) {
    require_ordered_envelopes(Phi, Psi);
    const Index n = Phi.size();
    Vector K(n);
    K[0] = canonical(std::max(std::min(Phi[0], 0.0), Psi[0]));
    for (Index i = 1; i < n; ++i) {
        K[i] = canonical(std::min(Phi[i], std::max(K[i - 1], Psi[i])));
    }
    return Phi.with_values(std::move(K));
}

SkorokhodSolution solve(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol) {
    auto [Phi, Psi] = envelopes(S, pair, tol);
    CadlagPath driver = resample(S, Phi.grid());
    CadlagPath K = reflect_stream(Phi, Psi);
    CadlagPath X = driver.with_values(driver.values() + K.values());
    VariationSplit split = split_variation(K);
    return {std::move(driver), std::move(Phi), std::move(Psi),  std::move(K),
            std::move(X),      std::move(split.Kr), std::move(split.Kl), std::move(split.TV)};
}

OneSidedSolution solve_one_sided(const CadlagPath& S, const BoundaryFunction& R, const Tolerances& tol) {
    const TimeGrid grid = truncate(merge(S.grid(), R.offset().grid()), S.grid().horizon());
    const CadlagPath driver = resample(S, grid);
    Vector psi_plus(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        psi_plus[i] = std::max(invert_offset(R, grid[i], driver[i], tol), 0.0);
    }
    CadlagPath K(grid, running_max(psi_plus));
    CadlagPath X = driver.with_values(driver.values() + K.values());
    return {std::move(X), std::move(K)};
}

CoupledFixpoint coupled_fixpoint(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol) {
    const TimeGrid grid = solution_grid(S, pair);
    const CadlagPath driver = resample(S, grid);
    const Index n = grid.size();
    Vector Kr = Vector::Zero(n);
    Vector Kl = Vector::Zero(n);
    Vector psi_r(n);
    Vector phi_l(n);
    CoupledFixpoint out;
    for (int sweep = 1; sweep <= tol.max_sweeps; ++sweep) {
        for (Index i = 0; i < n; ++i) {
            // R(t, S - Kl + Psi^r) = 0
            psi_r[i] = std::max(invert_offset(pair.R(), grid[i], driver[i] - Kl[i], tol), 0.0);
            // L(t, S + Kr - Phi^l) = 0, i.e. -Phi^l solves L(t, (S + Kr) + y) = 0
            phi_l[i] = std::max(-invert_offset(pair.L(), grid[i], driver[i] + Kr[i], tol), 0.0);
        }
        Vector next_r = running_max(psi_r);
        Vector next_l = running_max(phi_l);
        const double change =
            std::max((next_r - Kr).cwiseAbs().maxCoeff(), (next_l - Kl).cwiseAbs().maxCoeff());
        Kr = std::move(next_r);
        Kl = std::move(next_l);
        out.sweeps = sweep;
        out.residual = change;
        if (change < tol.fix) {
            out.Kr = CadlagPath(grid, std::move(Kr));
            out.Kl = CadlagPath(grid, std::move(Kl));
            return out;
        }
    }
    std::ostringstream msg;
    msg << "coupled fixed point did not converge in " << tol.max_sweeps << " sweeps (last change " << out.residual
        << ")";
    throw NumericError(msg.str());
}

void write_solution_csv(std::ostream& out, const SkorokhodSolution& sol) {
    out << "t,S,Phi,Psi,K,X,Kr,Kl,TV\n" << std::setprecision(17);
    for (Index i = 0; i < sol.S.size(); ++i) {
        out << sol.S.time(i) << ',' << sol.S[i] << ',' << sol.Phi[i] << ',' << sol.Psi[i] << ',' << sol.K[i] << ','
            << sol.X[i] << ',' << sol.Kr[i] << ',' << sol.Kl[i] << ',' << sol.TV[i] << '\n';
    }
}

void write_solution_csv_file(const std::string& filename, const SkorokhodSolution& sol) {
    std::ofstream out(filename);
    if (!out) {
        throw InputError("cannot write '" + filename + "'");
    }
    write_solution_csv(out, sol);
}

}  // namespace nlskp
