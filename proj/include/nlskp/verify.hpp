#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/reflector.hpp"

#include <optional>
#include <string>

namespace nlskp {

/// Outcome of one quantified check. `worst_violation` is the largest amount by which any
/// asserted inequality failed (0 when all hold exactly); `passed` iff it is within `tolerance`.
struct VerificationReport {
    std::string check_name;
    bool passed = true;
    double worst_violation = 0.0;
    std::optional<Index> location;
    std::string details;
    double tolerance = 0.0;

    std::string to_json() const;
};

/// Strictly increasing piecewise-linear map of [0, T] onto itself, given by its knots.
class TimeChange {
public:
    TimeChange(TimeGrid knots, Vector values);

    static TimeChange identity(double horizon);
    /// Two linear pieces sending `from` to `to` (both strictly inside (0, T)).
    static TimeChange two_piece(double horizon, double from, double to);

    const TimeGrid& grid() const { return knots_; }
    const Vector& values() const { return values_; }
    double horizon() const { return knots_.horizon(); }

    double operator()(double t) const;
    double inverse(double s) const;
    /// sup_t |lambda(t) - t|, attained at a knot.
    double distance_to_identity() const;

private:
    TimeGrid knots_;
    Vector values_;
};

/// Exact J1 distance on [0, T] between two step paths with a common horizon: the bottleneck
/// over monotone matchings of their jump sequences. Cost O(p q) in the number of jumps.
double j1_distance(const CadlagPath& f, const CadlagPath& g);

VerificationReport check_definition(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol = 1e-9);

/// Re-solves from grid instant d with driver T_d(S) + X_d and shifted boundaries and compares
/// the result with the tails of X and K.
VerificationReport check_shift(const SkorokhodSolution& sol, const BoundaryPair& pair, double d,
                               const Tolerances& tol = {});

/// Already-solved data for a comparison check; all paths on one grid.
struct ComparisonData {
    CadlagPath K1, K2, X1, X2, nu;
    double c01 = 0.0;
    double c02 = 0.0;
};

struct SplitComparisonData {
    CadlagPath Kr1, Kl1, Kr2, Kl2, nu;
    double c01 = 0.0;
    double c02 = 0.0;
};

VerificationReport check_comparison_one_sided(const CadlagPath& S1, const CadlagPath& S2, double c01, double c02,
                                              const CadlagPath& nu, const BoundaryFunction& R,
                                              const Tolerances& tol = {});
VerificationReport check_comparison_net(const CadlagPath& S1, const CadlagPath& S2, double c01, double c02,
                                        const CadlagPath& nu, const BoundaryPair& pair, const Tolerances& tol = {});
VerificationReport check_comparison_split(const CadlagPath& S2, double c01, double c02, const CadlagPath& nu,
                                          const BoundaryPair& pair, const Tolerances& tol = {});
/// pair2 is the narrower band: R1 >= R2 and L1 <= L2.
VerificationReport check_monotone_boundaries(const CadlagPath& S, const BoundaryPair& pair1,
                                             const BoundaryPair& pair2, const Tolerances& tol = {});
VerificationReport check_uniform_continuity(const CadlagPath& S1, const CadlagPath& S2, const BoundaryPair& pair1,
                                            const BoundaryPair& pair2, const Tolerances& tol = {});
/// Per-lambda J1 inequality with S' = S o lambda sampled on the refined grid.
VerificationReport check_j1_bound(const CadlagPath& S, const TimeChange& lambda, const BoundaryPair& pair,
                                  const Tolerances& tol = {});
/// Same with an arbitrary second driver S' on [0, T].
VerificationReport check_j1_bound(const CadlagPath& S, const CadlagPath& S_prime, const TimeChange& lambda,
                                  const BoundaryPair& pair, const Tolerances& tol = {});
VerificationReport check_oscillation_domination(const SkorokhodSolution& sol, double tol = 1e-9);

// Solver self-consistency on one solved instance.

/// sol.K equals the closed-form double-sup regulator of (Phi, Psi), bit for bit.
VerificationReport check_oracle_equivalence(const SkorokhodSolution& sol);
/// sol.K equals the piecewise running-extremum representation bit for bit, and K meets Phi at
/// every sigma_k and Psi at every tau_k.
VerificationReport check_representation(const SkorokhodSolution& sol);
/// inf (Phi - Psi) >= alpha / C.
VerificationReport check_separation(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol = 1e-9);
/// The coupled one-sided fixed point converges and reproduces sol.Kr, sol.Kl within tol.fix.
VerificationReport check_coupled_fixpoint(const SkorokhodSolution& sol, const BoundaryPair& pair,
                                          const Tolerances& tol = {});

// Assertion cores over solved data. The checks above solve and delegate here; negative
// controls call them with corrupted solutions.
VerificationReport assess_comparison(const std::string& check_name, const ComparisonData& data, double tol);
VerificationReport assess_split_comparison(const SplitComparisonData& data, double tol);
VerificationReport assess_monotone_boundaries(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                              double tol);
VerificationReport assess_uniform_continuity(const SkorokhodSolution& sol1, const SkorokhodSolution& sol2,
                                             const BoundaryPair& pair1, const BoundaryPair& pair2, double tol);
/// `sol_prime` must live on the refined grid containing lambda^{-1} of the grid of `sol`.
VerificationReport assess_j1_bound(const SkorokhodSolution& sol, const SkorokhodSolution& sol_prime,
                                   const TimeChange& lambda, const BoundaryPair& pair, double tol);

}  // namespace nlskp
