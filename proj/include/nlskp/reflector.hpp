#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/pathkit.hpp"
#include "nlskp/tolerances.hpp"

#include <iosfwd>
#include <string>

namespace nlskp {

/// Full output of the two-sided reflection on one shared grid.
struct SkorokhodSolution {
    CadlagPath S;    ///< driver
    CadlagPath Phi;  ///< L(t, S_t + Phi_t) = 0
    CadlagPath Psi;  ///< R(t, S_t + Psi_t) = 0
    CadlagPath K;    ///< regulator, Psi <= K <= Phi
    CadlagPath X;    ///< S + K
    CadlagPath Kr;   ///< nondecreasing push up
    CadlagPath Kl;   ///< nondecreasing push down
    CadlagPath TV;   ///< running total variation Kr + Kl

    const TimeGrid& grid() const { return S.grid(); }
};

struct Envelopes {
    CadlagPath Phi;
    CadlagPath Psi;
};

/// Grid on which a driver and a pair are solved: the driver grid refined by offset jumps up to its horizon.
TimeGrid solution_grid(const CadlagPath& S, const BoundaryPair& pair);

/// Pointwise roots of L(t, S_t + x) = 0 and R(t, S_t + x) = 0 on solution_grid(S, pair).
Envelopes envelopes(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol = {});

/// Literal double-loop evaluation of
///   K_t = -max( (-Phi_0)^+ ^ inf_{[0,t]} (-Psi), sup_{s<=t} [ (-Phi_s) ^ inf_{[s,t]} (-Psi) ] ),
/// O(n^2). Kept as the reference the streaming recursion is tested against.
CadlagPath reflect_direct(const CadlagPath& Phi, const CadlagPath& Psi);

/// K_0 = median(Psi_0, 0, Phi_0), K_i = min(Phi_i, max(K_{i-1}, Psi_i)). O(n).
CadlagPath reflect_stream(const CadlagPath& Phi, const CadlagPath& Psi);

SkorokhodSolution solve(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol = {});

struct OneSidedSolution {
    CadlagPath X;
    CadlagPath K;  ///< running max of (Psi)^+
};

/// Reflection against R alone (no upper constraint): K_t = sup_{s<=t} (Psi_s)^+.
OneSidedSolution solve_one_sided(const CadlagPath& S, const BoundaryFunction& R, const Tolerances& tol = {});

struct CoupledFixpoint {
    CadlagPath Kr;
    CadlagPath Kl;
    int sweeps = 0;
    double residual = 0.0;  ///< sup-norm change in the last sweep
};

/// Picard iteration of the coupled one-sided identities
///   Kr = sup (Psi^r)^+ with R(t, S - Kl + Psi^r) = 0,
///   Kl = sup (Phi^l)^+ with L(t, S + Kr - Phi^l) = 0,
/// started from (0, 0). Throws NumericError when max_sweeps is exhausted.
CoupledFixpoint coupled_fixpoint(const CadlagPath& S, const BoundaryPair& pair, const Tolerances& tol = {});

/// Solution CSV: `t,S,Phi,Psi,K,X,Kr,Kl,TV`, 17 significant digits.
void write_solution_csv(std::ostream& out, const SkorokhodSolution& sol);
void write_solution_csv_file(const std::string& filename, const SkorokhodSolution& sol);

}  // namespace nlskp
