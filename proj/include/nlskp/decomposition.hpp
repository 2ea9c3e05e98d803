#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/pathkit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nlskp {

struct SkorokhodSolution;

struct VariationSplit {
    CadlagPath Kr;  ///< accumulated positive increments
    CadlagPath Kl;  ///< accumulated negative increments (as a nondecreasing path)
    CadlagPath TV;  ///< Kr + Kl
};

/// Splits K into nondecreasing parts by the sign of each grid increment, with K_{0-} = 0.
VariationSplit split_variation(const CadlagPath& K);

enum class ScheduleCase {
    NeverActive,  ///< Psi < 0 < Phi throughout, K = 0
    UpperFirst,   ///< sigma* < tau*: the upper constraint is met first
    LowerFirst,   ///< tau* < sigma*: the lower activation is met first
};

std::string to_string(ScheduleCase c);

/// Grid indices at which K switches between running-min-of-Phi and running-max-of-Psi regimes.
///
/// Interleaving: tau_0 <= sigma_0 < tau_1 < sigma_1 < ... In the UpperFirst case tau_0 is the
/// nominal origin 0; in the LowerFirst case tau_0 = tau*. K = 0 before the first switch.
struct OscillationSchedule {
    ScheduleCase case_tag = ScheduleCase::NeverActive;
    std::optional<Index> sigma_star;
    std::optional<Index> tau_star;
    std::vector<Index> taus;
    std::vector<Index> sigmas;
};

/// First-hitting reading of sigma* = inf{t > 0 : Phi_t <= 0}, tau* = inf{t > 0 : Psi_t >= 0} on the
/// grid: the origin qualifies only when its predicate is strict (Phi_0 < 0 or Psi_0 > 0), later
/// instants qualify with the non-strict predicate.
OscillationSchedule oscillation_times(const CadlagPath& Phi, const CadlagPath& Psi);

/// Segment-by-segment assembly of K from the schedule:
///   [sigma_{k-1}, tau_k): K = running min of Phi from sigma_{k-1},
///   [tau_k, sigma_k):     K = running max of Psi from tau_k,
/// and 0 before the first switch. Throws InputError when the schedule does not fit the envelopes.
CadlagPath piecewise_representation(const CadlagPath& Phi, const CadlagPath& Psi, const OscillationSchedule& sched);

struct SupportViolation {
    Index index;
    char component;          ///< 'r' or 'l'
    double increment;        ///< size of the offending increment
    double constraint_value; ///< R(t, X_t) for 'r', L(t, X_t) for 'l'
};

struct SupportReport {
    bool passed = true;
    double worst = 0.0;  ///< largest |constraint| among increments above tolerance
    std::vector<SupportViolation> violations;
};

/// Flags every increment of Kr (resp. Kl) larger than tol where R(t, X_t) (resp. L(t, X_t)) is
/// not within tol of zero. The origin increment is taken from K_{0-} = 0.
SupportReport support_check(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol = 1e-9);

/// `{"case":...,"sigma_star":i|null,"tau_star":i|null,"taus":[...],"sigmas":[...]}`
std::string schedule_json(const OscillationSchedule& sched);

}  // namespace nlskp
