#include "nlskp/decomposition.hpp"

#include "nlskp/errors.hpp"
#include "nlskp/reflector.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace nlskp {

namespace {

// First i > from with min(Phi[from..i]) <= Psi[i].
std::optional<Index> next_lower_touch(const CadlagPath& Phi, const CadlagPath& Psi, Index from) {
    double inf_phi = Phi[from];
    for (Index i = from + 1; i < Phi.size(); ++i) {
        inf_phi = std::min(inf_phi, Phi[i]);
        if (inf_phi <= Psi[i]) {
            return i;
        }
    }
    return std::nullopt;
}

// First i > from with max(Psi[from..i]) >= Phi[i].
std::optional<Index> next_upper_touch(const CadlagPath& Phi, const CadlagPath& Psi, Index from) {
    double sup_psi = Psi[from];
    for (Index i = from + 1; i < Psi.size(); ++i) {
        sup_psi = std::max(sup_psi, Psi[i]);
        if (sup_psi >= Phi[i]) {
            return i;
        }
    }
    return std::nullopt;
}

bool same_schedule(const OscillationSchedule& a, const OscillationSchedule& b) {
    return a.case_tag == b.case_tag && a.sigma_star == b.sigma_star && a.tau_star == b.tau_star &&
           a.taus == b.taus && a.sigmas == b.sigmas;
}

}  // namespace

VariationSplit split_variation(const CadlagPath& K) {
    const Index n = K.size();
    Vector up(n);
    Vector down(n);
    double prev = 0.0;
    double acc_up = 0.0;
    double acc_down = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double dk = K[i] - prev;
        if (dk > 0.0) {
            acc_up += dk;
        } else if (dk < 0.0) {
            acc_down -= dk;
        }
        up[i] = acc_up;
        down[i] = acc_down;
        prev = K[i];
    }
    Vector tv = up + down;
    return {K.with_values(std::move(up)), K.with_values(std::move(down)), K.with_values(std::move(tv))};
}

std::string to_string(ScheduleCase c) {
    switch (c) {
    case ScheduleCase::NeverActive:
        return "never";
    case ScheduleCase::UpperFirst:
        return "upper_first";
    case ScheduleCase::LowerFirst:
        return "lower_first";
    }
    return "unknown";
}

OscillationSchedule oscillation_times(const CadlagPath& Phi, const CadlagPath& Psi) {
    if (!(Phi.grid() == Psi.grid())) {
        throw DomainError("envelopes must share one grid");
    }
    const Index n = Phi.size();
    OscillationSchedule sched;
    if (Phi[0] < 0.0) {
        sched.sigma_star = 0;
    } else {
        for (Index i = 1; i < n; ++i) {
            if (Phi[i] <= 0.0) {
                sched.sigma_star = i;
                break;
            }
        }
    }
    if (Psi[0] > 0.0) {
        sched.tau_star = 0;
    } else {
        for (Index i = 1; i < n; ++i) {
            if (Psi[i] >= 0.0) {
                sched.tau_star = i;
                break;
            }
        }
    }
    if (!sched.sigma_star && !sched.tau_star) {
        return sched;
    }

    bool on_lower;  // next switch to look for is a tau (K follows Phi until Psi catches up)
    if (sched.sigma_star && (!sched.tau_star || *sched.sigma_star < *sched.tau_star)) {
        sched.case_tag = ScheduleCase::UpperFirst;
        sched.taus.push_back(0);
        sched.sigmas.push_back(*sched.sigma_star);
        on_lower = true;
    } else {
        sched.case_tag = ScheduleCase::LowerFirst;
        sched.taus.push_back(*sched.tau_star);
        on_lower = false;
    }
    for (;;) {
        if (on_lower) {
            const auto tau = next_lower_touch(Phi, Psi, sched.sigmas.back());
            if (!tau) {
                break;
            }
            sched.taus.push_back(*tau);
        } else {
            const auto sigma = next_upper_touch(Phi, Psi, sched.taus.back());
            if (!sigma) {
                break;
            }
            sched.sigmas.push_back(*sigma);
        }
        on_lower = !on_lower;
    }
    return sched;
}

CadlagPath piecewise_representation(const CadlagPath& Phi, const CadlagPath& Psi, const OscillationSchedule& sched) {
    if (!same_schedule(sched, oscillation_times(Phi, Psi))) {
        throw InputError("oscillation schedule does not match the envelopes");
    }
    const Index n = Phi.size();
    Vector K = Vector::Zero(n);
    if (sched.case_tag == ScheduleCase::NeverActive) {
        return Phi.with_values(std::move(K));
    }

    // Segment starts in time order, tagged by which envelope K follows.
    struct Segment {
        Index start;
        bool follows_phi;
    };
    std::vector<Segment> segments;
    const bool upper_first = sched.case_tag == ScheduleCase::UpperFirst;
    const std::size_t first_tau = upper_first ? 1 : 0;
    for (std::size_t k = 0; k < sched.sigmas.size() || first_tau + k < sched.taus.size(); ++k) {
        if (upper_first) {
            if (k < sched.sigmas.size()) {
                segments.push_back({sched.sigmas[k], true});
            }
            if (first_tau + k < sched.taus.size()) {
                segments.push_back({sched.taus[first_tau + k], false});
            }
        } else {
            if (k < sched.taus.size()) {
                segments.push_back({sched.taus[k], false});
            }
            if (k < sched.sigmas.size()) {
                segments.push_back({sched.sigmas[k], true});
            }
        }
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const Index begin = segments[s].start;
        const Index end = s + 1 < segments.size() ? segments[s + 1].start : n;
        if (segments[s].follows_phi) {
            double running = Phi[begin];
            for (Index i = begin; i < end; ++i) {
                running = std::min(running, Phi[i]);
                K[i] = running;
            }
        } else {
            double running = Psi[begin];
            for (Index i = begin; i < end; ++i) {
                running = std::max(running, Psi[i]);
                K[i] = running;
            }
        }
    }
    return Phi.with_values((K.array() + 0.0).matrix());
}

SupportReport support_check(const SkorokhodSolution& sol, const BoundaryPair& pair, double tol) {
    SupportReport report;
    for (Index i = 0; i < sol.K.size(); ++i) {
        const double t = sol.grid()[i];
        const double d_up = sol.Kr[i] - (i > 0 ? sol.Kr[i - 1] : 0.0);
        const double d_down = sol.Kl[i] - (i > 0 ? sol.Kl[i - 1] : 0.0);
        if (d_up > tol) {
            const double r = pair.R()(t, sol.X[i]);
            if (std::abs(r) > tol) {
                report.violations.push_back({i, 'r', d_up, r});
                report.worst = std::max(report.worst, std::abs(r));
            }
        }
        if (d_down > tol) {
            const double l = pair.L()(t, sol.X[i]);
            if (std::abs(l) > tol) {
                report.violations.push_back({i, 'l', d_down, l});
                report.worst = std::max(report.worst, std::abs(l));
            }
        }
    }
    report.passed = report.violations.empty();
    return report;
}

std::string schedule_json(const OscillationSchedule& sched) {
    nlohmann::json j;
    j["case"] = to_string(sched.case_tag);
    j["sigma_star"] = sched.sigma_star ? nlohmann::json(*sched.sigma_star) : nlohmann::json(nullptr);
    j["tau_star"] = sched.tau_star ? nlohmann::json(*sched.tau_star) : nlohmann::json(nullptr);
    j["taus"] = sched.taus;
    j["sigmas"] = sched.sigmas;
    return j.dump();
}

}  // namespace nlskp
