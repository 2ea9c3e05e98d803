#pragma once

#include "nlskp/boundaries.hpp"
#include "nlskp/genpaths.hpp"
#include "nlskp/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nlskp {

/// One seeded test case: a driver and a boundary pair.
struct Instance {
    CadlagPath S;
    BoundaryPair pair;
};

/// Stateless seed mixing so that sub-streams do not overlap.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Offsets with a few jumps at random times in (0, T); R below L by a width of at least 0.25.
BoundaryPair random_pair(Family family, Rng& rng, double horizon = 1.0);
/// Driver of a seed-chosen kind (brownian, jump, sawtooth, step, brownian plus jumps) on n points.
CadlagPath random_driver(Rng& rng, Index n, double horizon = 1.0);
Instance make_instance(Family family, std::uint64_t seed, Index n);

/// Checks the seeded campaign knows how to run.
const std::vector<std::string>& seeded_checks();

/// Runs `check` on the instance(s) derived from (family, seed, n). Errors raised by the
/// solver become failed reports.
VerificationReport run_seeded_check(const std::string& check, Family family, std::uint64_t seed, Index n,
                                    const Tolerances& tol = {});

/// Deliberate corruption of a solved instance.
struct Corruption {
    enum class Kind { None, ZeroRegulator, BumpRegulator } kind = Kind::None;
    Index index = 0;
    double delta = 0.0;
};
SkorokhodSolution corrupt(const SkorokhodSolution& sol, const Corruption& c);

/// Single-solution checks on an explicit instance: definition, shift, oscillation_domination,
/// representation, separation, oracle_equivalence, coupled_fixpoint. `d` feeds shift.
VerificationReport run_explicit_check(const std::string& check, const CadlagPath& S, const BoundaryPair& pair,
                                      const Corruption& c, std::optional<double> d, const Tolerances& tol = {});

struct ExplicitInstance {
    std::string check;
    CadlagPath S;
    BoundaryPair pair;
    Corruption corruption;
    std::optional<double> d;
};

/// Manifest JSON:
///   {"checks":[...], "seeds": N | [s,...] | {"first":s,"count":N},
///    "n":[...], "families":[...],
///    "instances":[{"check":..., "path":{"times":[..],"values":[..]} | "path_file":..., "pair":{..},
///                  "d":x, "corrupt":{"kind":"zero_regulator"|"bump_regulator","index":i,"delta":x}}]}
/// Every field is optional; an empty object runs nothing.
struct Manifest {
    std::vector<std::string> checks;
    std::vector<std::uint64_t> seeds;
    std::vector<Index> sizes{8, 64, 512};
    std::vector<Family> families{Family::Linear, Family::Scaled, Family::Sine};
    std::vector<ExplicitInstance> instances;
};

Manifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::string& filename);
/// All seeded checks, 200 seeds, n in {8, 64, 512}, all families.
Manifest default_manifest();

struct SuiteRecord {
    std::string check_name;
    std::uint64_t seed = 0;
    std::string family;  ///< empty for explicit instances
    Index n = 0;
    VerificationReport report;
};

struct SuiteResult {
    std::vector<SuiteRecord> records;  ///< ordered by (check_name, seed, family, n)
    bool all_passed() const;
};

/// Worker count: hardware concurrency, capped by NLSKP_THREADS when set.
unsigned suite_threads();
SuiteResult run_suite(const Manifest& manifest, const Tolerances& tol = {}, unsigned threads = 0);
void write_jsonl(std::ostream& out, const SuiteResult& result);

}  // namespace nlskp
