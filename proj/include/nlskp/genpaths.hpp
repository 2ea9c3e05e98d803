#pragma once

#include "nlskp/pathkit.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace nlskp {

enum class PathKind { Brownian, Jump, Ramp, Sawtooth, Step, StaircaseNu };

std::string to_string(PathKind kind);
PathKind parse_path_kind(const std::string& name);

struct GenParams {
    double volatility = 1.0;  ///< brownian: increment scale vol * sqrt(dt)
    double intensity = 5.0;   ///< jump, staircase_nu: expected jumps per unit time
    double jump_scale = 0.5;  ///< jump: N(0, scale^2) sizes; staircase_nu: Exp(mean scale) sizes
    double amplitude = 1.0;   ///< ramp, sawtooth, step
    double period = 0.25;     ///< sawtooth
};

/// Reproducible driver / nu path specification, sampled on the uniform grid of n points on [0, T].
struct GenSpec {
    PathKind kind = PathKind::Brownian;
    std::uint64_t seed = 0;
    Index n = 64;
    double horizon = 1.0;
    GenParams params;
};

/// Random source used by all generators: std::mt19937_64 (64-bit Mersenne Twister, the
/// published MT19937-64 constants) seeded with GenSpec::seed. Uniforms take the top 53 bits,
/// u = (x >> 11) * 2^-53; Gaussians use the Box-Muller cosine branch on (1 - u1, u2).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                  ///< [0, 1)
    double uniform(double lo, double hi);
    double normal();                   ///< standard Gaussian
    double exponential(double mean);
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Deterministic in the GenSpec. Every kind starts at 0 except where noted:
///   brownian     cumulative N(0, vol^2 dt) increments
///   jump         compound Poisson staircase, N(0, jump_scale^2) jumps
///   ramp         amplitude * t / T
///   sawtooth     amplitude * frac(t / period)
///   step         0 before T/2, amplitude from T/2 on
///   staircase_nu nondecreasing, nonnegative compound Poisson with Exp(jump_scale) jumps
CadlagPath generate(const GenSpec& spec);

}  // namespace nlskp
