#include "nlskp/genpaths.hpp"

#include "nlskp/errors.hpp"

#include <cmath>
#include <numbers>

namespace nlskp {

std::string to_string(PathKind kind) {
    switch (kind) {
    case PathKind::Brownian:
        return "brownian";
    case PathKind::Jump:
        return "jump";
    case PathKind::Ramp:
        return "ramp";
    case PathKind::Sawtooth:
        return "sawtooth";
    case PathKind::Step:
        return "step";
    case PathKind::StaircaseNu:
        return "staircase_nu";
    }
    return "unknown";
}

PathKind parse_path_kind(const std::string& name) {
    for (PathKind kind : {PathKind::Brownian, PathKind::Jump, PathKind::Ramp, PathKind::Sawtooth, PathKind::Step,
                          PathKind::StaircaseNu}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InputError("unknown path kind '" + name + "'");
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential(double mean) {
    return -mean * std::log(1.0 - uniform());
}

namespace {

void validate(const GenSpec& spec) {
    if (spec.n < 1) {
        throw InputError("GenSpec: n must be >= 1");
    }
    if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) {
        throw InputError("GenSpec: horizon must be positive");
    }
    const GenParams& p = spec.params;
    if (!(p.volatility >= 0.0) || !(p.intensity >= 0.0) || !(p.jump_scale >= 0.0)) {
        throw InputError("GenSpec: volatility, intensity and jump_scale must be nonnegative");
    }
    if (!std::isfinite(p.amplitude)) {
        throw InputError("GenSpec: amplitude must be finite");
    }
    if (spec.kind == PathKind::Sawtooth && !(p.period > 0.0)) {
        throw InputError("GenSpec: sawtooth needs a positive period");
    }
}

// Per-step jump count over dt for a Poisson clock of rate lambda (Knuth's product method).
int poisson_count(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

}  // namespace

CadlagPath generate(const GenSpec& spec) {
    validate(spec);
    const TimeGrid grid = TimeGrid::uniform(spec.n, spec.horizon);
    const GenParams& p = spec.params;
    Rng rng(spec.seed);
    Vector v = Vector::Zero(spec.n);
    for (Index i = 1; i < spec.n; ++i) {
        const double t = grid[i];
        const double dt = t - grid[i - 1];
        switch (spec.kind) {
        case PathKind::Brownian:
            v[i] = v[i - 1] + p.volatility * std::sqrt(dt) * rng.normal();
            break;
        case PathKind::Jump: {
            double x = v[i - 1];
            for (int k = poisson_count(rng, p.intensity * dt); k > 0; --k) {
                x += p.jump_scale * rng.normal();
            }
            v[i] = x;
            break;
        }
        case PathKind::Ramp:
            v[i] = p.amplitude * t / spec.horizon;
            break;
        case PathKind::Sawtooth: {
            const double phase = t / p.period;
            v[i] = p.amplitude * (phase - std::floor(phase));
            break;
        }
        case PathKind::Step:
            v[i] = t >= 0.5 * spec.horizon ? p.amplitude : 0.0;
            break;
        case PathKind::StaircaseNu: {
            double x = v[i - 1];
            for (int k = poisson_count(rng, p.intensity * dt); k > 0; --k) {
                x += rng.exponential(p.jump_scale);
            }
            v[i] = x;
            break;
        }
        }
    }
    return CadlagPath(grid, std::move(v));
}

}  // namespace nlskp
