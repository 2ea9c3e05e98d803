#include "nlskp/suite.hpp"

#include "nlskp/decomposition.hpp"
#include "nlskp/errors.hpp"
#include "nlskp/io.hpp"
#include "nlskp/reflector.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace nlskp {

namespace {

const std::vector<std::string>& explicit_checks() {
    static const std::vector<std::string> names{"coupled_fixpoint", "definition",  "oracle_equivalence",
                                                "oscillation_domination", "representation", "separation",
                                                "shift"};
    return names;
}

bool contains(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::uint64_t name_salt(const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char ch : name) {
        h = (h ^ ch) * 1099511628211ULL;
    }
    return h;
}

CadlagPath random_step(Rng& rng, double horizon, int jumps, double lo, double hi) {
    std::vector<double> times{0.0};
    for (int k = 0; k < jumps; ++k) {
        const double t = rng.uniform(0.0, horizon);
        if (t > 0.0) {
            times.push_back(t);
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const auto n = static_cast<Index>(times.size());
    Vector values(n);
    for (Index i = 0; i < n; ++i) {
        values[i] = rng.uniform(lo, hi);
    }
    return CadlagPath(TimeGrid(Eigen::Map<const Vector>(times.data(), n)), std::move(values));
}

CadlagPath add_paths(const CadlagPath& a, const CadlagPath& b, double sign = 1.0) {
    const TimeGrid grid = merge(a.grid(), b.grid());
    const CadlagPath ra = resample(a, grid);
    const CadlagPath rb = resample(b, grid);
    return CadlagPath(grid, ra.values() + sign * rb.values());
}

CadlagPath with_noise(const CadlagPath& path, Rng& rng, double amplitude) {
    Vector v = path.values();
    for (Index i = 0; i < v.size(); ++i) {
        v[i] += rng.uniform(-amplitude, amplitude);
    }
    return path.with_values(std::move(v));
}

CadlagPath random_nu(Rng& rng, Index n, double horizon) {
    GenSpec spec;
    spec.kind = PathKind::StaircaseNu;
    spec.seed = rng.bits();
    spec.n = n;
    spec.horizon = horizon;
    spec.params.intensity = rng.uniform(1.0, 8.0);
    spec.params.jump_scale = rng.uniform(0.1, 0.8);
    return generate(spec);
}

// S1 between S2 and S2 + nu, from hugging either side to anywhere in between.
CadlagPath dominating_driver(const CadlagPath& S2, const CadlagPath& nu, Rng& rng) {
    const CadlagPath n = resample(nu, S2.grid());
    const int mode = static_cast<int>(rng.bits() % 3);
    Vector v(S2.size());
    for (Index i = 0; i < v.size(); ++i) {
        const double u = mode == 0 ? 1.0 : mode == 1 ? rng.uniform() : static_cast<double>(rng.bits() % 2);
        v[i] = S2[i] + u * n[i];
    }
    v[0] = 0.0;
    return S2.with_values(std::move(v));
}

std::pair<double, double> random_initial_values(Rng& rng) {
    const double c01 = rng.uniform(-0.5, 0.5);
    const double c02 = rng.bits() % 4 == 0 ? c01 : rng.uniform(-0.5, 0.5);
    return {c01, c02};
}

TimeChange random_time_change(Rng& rng, double horizon) {
    const int interior = 1 + static_cast<int>(rng.bits() % 3);
    std::vector<double> u, v;
    for (int k = 0; k < interior; ++k) {
        u.push_back(rng.uniform(0.05, 0.95) * horizon);
        v.push_back(rng.uniform(0.05, 0.95) * horizon);
    }
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    Vector knots(interior + 2), values(interior + 2);
    knots[0] = values[0] = 0.0;
    knots[interior + 1] = values[interior + 1] = horizon;
    for (int k = 0; k < interior; ++k) {
        knots[k + 1] = u[static_cast<std::size_t>(k)];
        values[k + 1] = v[static_cast<std::size_t>(k)];
    }
    for (Index k = 1; k < knots.size(); ++k) {
        if (!(knots[k] > knots[k - 1]) || !(values[k] > values[k - 1])) {
            return TimeChange::two_piece(horizon, 0.5 * horizon, 0.3 * horizon);
        }
    }
    return TimeChange(TimeGrid(std::move(knots)), std::move(values));
}

VerificationReport combine(const std::string& name, const std::vector<VerificationReport>& parts) {
    VerificationReport out;
    out.check_name = name;
    for (const VerificationReport& r : parts) {
        out.tolerance = r.tolerance;
        if (r.worst_violation > out.worst_violation || (!r.passed && out.passed)) {
            out.worst_violation = r.worst_violation;
            out.location = r.location;
        }
        out.passed = out.passed && r.passed;
        out.details += (out.details.empty() ? "" : " | ") + r.details;
    }
    return out;
}

VerificationReport failed_report(const std::string& name, const std::string& what) {
    VerificationReport r;
    r.check_name = name;
    r.passed = false;
    r.worst_violation = std::numeric_limits<double>::infinity();
    r.details = "error: " + what;
    return r;
}

Index random_index(Rng& rng, Index size) {
    return static_cast<Index>(rng.bits() % static_cast<std::uint64_t>(size));
}

VerificationReport seeded(const std::string& check, Family family, std::uint64_t seed, Index n,
                          const Tolerances& tol) {
    const Instance inst = make_instance(family, seed, n);
    const BoundaryPair& pair = inst.pair;
    Rng rng(mix_seed(mix_seed(mix_seed(seed, name_salt(check)), static_cast<std::uint64_t>(family)),
                     static_cast<std::uint64_t>(n)));
    const double T = inst.S.grid().horizon();

    if (contains(explicit_checks(), check) && check != "shift") {
        return run_explicit_check(check, inst.S, pair, {}, std::nullopt, tol);
    }
    if (check == "shift") {
        const SkorokhodSolution sol = solve(inst.S, pair, tol);
        std::vector<VerificationReport> parts;
        for (int k = 0; k < 3; ++k) {
            parts.push_back(check_shift(sol, pair, sol.grid()[random_index(rng, sol.grid().size())], tol));
        }
        return combine(check, parts);
    }
    if (check == "comparison_one_sided" || check == "comparison_net" || check == "comparison_split") {
        const CadlagPath nu = random_nu(rng, n, T);
        const auto [c01, c02] = random_initial_values(rng);
        if (check == "comparison_split") {
            return check_comparison_split(inst.S, c01, c02, nu, pair, tol);
        }
        const CadlagPath S1 = dominating_driver(inst.S, nu, rng);
        if (check == "comparison_one_sided") {
            return check_comparison_one_sided(S1, inst.S, c01, c02, nu, pair.R(), tol);
        }
        return check_comparison_net(S1, inst.S, c01, c02, nu, pair, tol);
    }
    if (check == "monotone_boundaries") {
        const double wide_r = rng.bits() % 3 == 0 ? 0.0 : 0.5;
        const double wide_l = rng.bits() % 3 == 0 ? 0.0 : 0.5;
        const CadlagPath dR = random_step(rng, T, static_cast<int>(rng.bits() % 3), 0.0, wide_r);
        const CadlagPath dL = random_step(rng, T, static_cast<int>(rng.bits() % 3), 0.0, wide_l);
        const BoundaryPair wider(pair.L().with_offset(add_paths(pair.L().offset(), dL)),
                                 pair.R().with_offset(add_paths(pair.R().offset(), dR, -1.0)), tol);
        return check_monotone_boundaries(inst.S, wider, pair, tol);
    }
    if (check == "uniform_continuity") {
        const CadlagPath S2 = with_noise(inst.S, rng, 0.1);
        const CadlagPath dL = random_step(rng, T, static_cast<int>(rng.bits() % 3), -0.1, 0.1);
        const CadlagPath dR = random_step(rng, T, static_cast<int>(rng.bits() % 3), -0.1, 0.1);
        const BoundaryPair other(pair.L().with_offset(add_paths(pair.L().offset(), dL)),
                                 pair.R().with_offset(add_paths(pair.R().offset(), dR)), tol);
        return check_uniform_continuity(inst.S, S2, pair, other, tol);
    }
    if (check == "j1_bound") {
        const TimeChange lambda = random_time_change(rng, T);
        if (seed % 2 == 0) {
            return check_j1_bound(inst.S, lambda, pair, tol);
        }
        return check_j1_bound(inst.S, with_noise(inst.S, rng, 0.05), lambda, pair, tol);
    }
    throw InputError("unknown check '" + check + "'");
}

std::vector<std::uint64_t> parse_seeds(const nlohmann::json& j) {
    std::vector<std::uint64_t> seeds;
    if (j.is_number_integer()) {
        for (std::uint64_t s = 0; s < j.get<std::uint64_t>(); ++s) {
            seeds.push_back(s);
        }
    } else if (j.is_array()) {
        seeds = j.get<std::vector<std::uint64_t>>();
    } else if (j.is_object()) {
        const auto first = j.value("first", std::uint64_t{0});
        const auto count = j.value("count", std::uint64_t{0});
        for (std::uint64_t s = 0; s < count; ++s) {
            seeds.push_back(first + s);
        }
    } else {
        throw InputError("manifest 'seeds' must be a count, a list or {\"first\",\"count\"}");
    }
    return seeds;
}

Corruption parse_corruption(const nlohmann::json& j) {
    Corruption c;
    const std::string kind = j.value("kind", std::string("none"));
    if (kind == "zero_regulator") {
        c.kind = Corruption::Kind::ZeroRegulator;
    } else if (kind == "bump_regulator") {
        c.kind = Corruption::Kind::BumpRegulator;
        c.index = j.value("index", Index{0});
        c.delta = j.value("delta", 0.0);
    } else if (kind != "none") {
        throw InputError("unknown corruption kind '" + kind + "'");
    }
    return c;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);  // splitmix64 finalizer
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

BoundaryPair random_pair(Family family, Rng& rng, double horizon) {
    const CadlagPath lower = random_step(rng, horizon, static_cast<int>(rng.bits() % 4), -1.0, 0.0);
    const CadlagPath width = random_step(rng, horizon, static_cast<int>(rng.bits() % 4), 0.25, 1.5);
    const CadlagPath upper = add_paths(lower, width);
    switch (family) {
    case Family::Linear:
        return BoundaryPair(BoundaryFunction::linear(upper), BoundaryFunction::linear(lower));
    case Family::Scaled: {
        const double a = rng.uniform(0.5, 3.0);
        return BoundaryPair(BoundaryFunction::scaled(a, upper), BoundaryFunction::scaled(a, lower));
    }
    case Family::Sine: {
        const double eps = rng.uniform(0.1, 0.6) * (rng.bits() % 2 == 0 ? 1.0 : -1.0);
        const double omega = rng.uniform(0.1, 0.9) / std::abs(eps);
        return BoundaryPair(BoundaryFunction::sine(eps, omega, upper), BoundaryFunction::sine(eps, omega, lower));
    }
    }
    throw InputError("unknown family");
}

CadlagPath random_driver(Rng& rng, Index n, double horizon) {
    GenSpec spec;
    spec.n = n;
    spec.horizon = horizon;
    spec.seed = rng.bits();
    const int kind = static_cast<int>(rng.bits() % 5);
    switch (kind) {
    case 0:
    case 4:
        spec.kind = PathKind::Brownian;
        spec.params.volatility = rng.uniform(0.5, 3.0);
        break;
    case 1:
        spec.kind = PathKind::Jump;
        spec.params.intensity = rng.uniform(2.0, 10.0);
        spec.params.jump_scale = rng.uniform(0.3, 1.5);
        break;
    case 2:
        spec.kind = PathKind::Sawtooth;
        spec.params.amplitude = rng.uniform(-2.0, 2.0);
        spec.params.period = rng.uniform(0.1, 0.5);
        break;
    case 3:
        spec.kind = PathKind::Step;
        spec.params.amplitude = rng.uniform(-2.0, 2.0);
        break;
    }
    CadlagPath S = generate(spec);
    if (kind == 4) {
        GenSpec jumps = spec;
        jumps.kind = PathKind::Jump;
        jumps.seed = rng.bits();
        jumps.params.intensity = rng.uniform(2.0, 6.0);
        jumps.params.jump_scale = rng.uniform(0.3, 1.0);
        S = S.with_values(S.values() + generate(jumps).values());
    }
    return S;
}

Instance make_instance(Family family, std::uint64_t seed, Index n) {
    Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(family)), static_cast<std::uint64_t>(n)));
    BoundaryPair pair = random_pair(family, rng);
    CadlagPath S = random_driver(rng, n);
    return {std::move(S), std::move(pair)};
}

const std::vector<std::string>& seeded_checks() {
    static const std::vector<std::string> names{
        "comparison_net",   "comparison_one_sided", "comparison_split",       "coupled_fixpoint",
        "definition",       "j1_bound",             "monotone_boundaries",    "oracle_equivalence",
        "oscillation_domination", "representation", "separation",            "shift",
        "uniform_continuity"};
    return names;
}

VerificationReport run_seeded_check(const std::string& check, Family family, std::uint64_t seed, Index n,
                                    const Tolerances& tol) {
    if (!contains(seeded_checks(), check)) {
        throw InputError("unknown check '" + check + "'");
    }
    try {
        return seeded(check, family, seed, n, tol);
    } catch (const std::exception& e) {
        return failed_report(check, e.what());
    }
}

SkorokhodSolution corrupt(const SkorokhodSolution& sol, const Corruption& c) {
    if (c.kind == Corruption::Kind::None) {
        return sol;
    }
    Vector K = Vector::Zero(sol.K.size());
    if (c.kind == Corruption::Kind::BumpRegulator) {
        if (c.index < 0 || c.index >= sol.K.size()) {
            throw InputError("corruption index out of range");
        }
        K = sol.K.values();
        K[c.index] += c.delta;
    }
    SkorokhodSolution out = sol;
    out.K = sol.K.with_values(K);
    out.X = sol.S.with_values(sol.S.values() + K);
    VariationSplit split = split_variation(out.K);
    out.Kr = std::move(split.Kr);
    out.Kl = std::move(split.Kl);
    out.TV = std::move(split.TV);
    return out;
}

VerificationReport run_explicit_check(const std::string& check, const CadlagPath& S, const BoundaryPair& pair,
                                      const Corruption& c, std::optional<double> d, const Tolerances& tol) {
    if (!contains(explicit_checks(), check)) {
        throw InputError("check '" + check + "' cannot run on an explicit instance");
    }
    const SkorokhodSolution sol = corrupt(solve(S, pair, tol), c);
    if (check == "definition") {
        return check_definition(sol, pair, tol.check);
    }
    if (check == "shift") {
        return check_shift(sol, pair, d.value_or(sol.grid().size() > 1 ? sol.grid()[1] : 0.0), tol);
    }
    if (check == "oscillation_domination") {
        return check_oscillation_domination(sol, tol.check);
    }
    if (check == "representation") {
        return check_representation(sol);
    }
    if (check == "separation") {
        return check_separation(sol, pair, tol.check);
    }
    if (check == "oracle_equivalence") {
        return check_oracle_equivalence(sol);
    }
    return check_coupled_fixpoint(sol, pair, tol);
}

Manifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        throw InputError("manifest must be a JSON object");
    }
    Manifest m;
    try {
        if (j.contains("checks")) {
            for (const auto& name : j.at("checks")) {
                const std::string check = name.get<std::string>();
                if (!contains(seeded_checks(), check)) {
                    throw InputError("manifest: unknown check '" + check + "'");
                }
                m.checks.push_back(check);
            }
        }
        if (j.contains("seeds")) {
            m.seeds = parse_seeds(j.at("seeds"));
        } else if (!m.checks.empty()) {
            m.seeds = parse_seeds(nlohmann::json(200));
        }
        if (j.contains("n")) {
            m.sizes = j.at("n").is_array() ? j.at("n").get<std::vector<Index>>()
                                           : std::vector<Index>{j.at("n").get<Index>()};
        }
        if (j.contains("families")) {
            m.families.clear();
            for (const auto& f : j.at("families")) {
                const std::string name = f.get<std::string>();
                if (name == "linear") {
                    m.families.push_back(Family::Linear);
                } else if (name == "scaled") {
                    m.families.push_back(Family::Scaled);
                } else if (name == "sine") {
                    m.families.push_back(Family::Sine);
                } else {
                    throw InputError("manifest: unknown family '" + name + "'");
                }
            }
        }
        if (j.contains("instances")) {
            for (const auto& inst : j.at("instances")) {
                const std::string check = inst.at("check").get<std::string>();
                if (!contains(explicit_checks(), check)) {
                    throw InputError("manifest: check '" + check + "' cannot run on an explicit instance");
                }
                CadlagPath S;
                if (inst.contains("path_file")) {
                    std::filesystem::path file = inst.at("path_file").get<std::string>();
                    if (file.is_relative() && !base_dir.empty()) {
                        file = base_dir / file;
                    }
                    S = read_path_csv_file(file.string());
                } else {
                    S = path_from_json(inst.at("path"));
                }
                BoundaryPair pair = pair_from_json(inst.at("pair"), base_dir);
                const Corruption c = inst.contains("corrupt") ? parse_corruption(inst.at("corrupt")) : Corruption{};
                std::optional<double> d;
                if (inst.contains("d")) {
                    d = inst.at("d").get<double>();
                }
                m.instances.push_back({check, std::move(S), std::move(pair), c, d});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("manifest: ") + e.what());
    }
    for (Index n : m.sizes) {
        if (n < 1) {
            throw InputError("manifest: grid sizes must be positive");
        }
    }
    return m;
}

Manifest load_manifest(const std::string& filename) {
    return parse_manifest(read_json_file(filename), std::filesystem::path(filename).parent_path());
}

Manifest default_manifest() {
    Manifest m;
    m.checks = seeded_checks();
    m.seeds = parse_seeds(nlohmann::json(200));
    return m;
}

bool SuiteResult::all_passed() const {
    return std::all_of(records.begin(), records.end(), [](const SuiteRecord& r) { return r.report.passed; });
}

unsigned suite_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NLSKP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

SuiteResult run_suite(const Manifest& manifest, const Tolerances& tol, unsigned threads) {
    struct Job {
        std::string check;
        std::uint64_t seed;
        Family family;
        Index n;
        const ExplicitInstance* inst;
    };
    std::vector<Job> jobs;
    for (const std::string& check : manifest.checks) {
        for (std::uint64_t seed : manifest.seeds) {
            for (Family family : manifest.families) {
                for (Index n : manifest.sizes) {
                    jobs.push_back({check, seed, family, n, nullptr});
                }
            }
        }
    }
    for (std::size_t k = 0; k < manifest.instances.size(); ++k) {
        const ExplicitInstance& inst = manifest.instances[k];
        jobs.push_back({inst.check, k, Family::Linear, inst.S.size(), &inst});
    }

    std::vector<SuiteRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            const Job& job = jobs[k];
            SuiteRecord& rec = records[k];
            rec.check_name = job.check;
            rec.seed = job.seed;
            rec.n = job.n;
            if (job.inst) {
                try {
                    rec.report = run_explicit_check(job.check, job.inst->S, job.inst->pair, job.inst->corruption,
                                                    job.inst->d, tol);
                } catch (const std::exception& e) {
                    rec.report = failed_report(job.check, e.what());
                }
            } else {
                rec.family = to_string(job.family);
                rec.report = run_seeded_check(job.check, job.family, job.seed, job.n, tol);
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads ? threads : suite_threads(),
                                                           static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread& t : pool) {
        t.join();
    }
    std::stable_sort(records.begin(), records.end(), [](const SuiteRecord& a, const SuiteRecord& b) {
        return std::tie(a.check_name, a.seed, a.family, a.n) < std::tie(b.check_name, b.seed, b.family, b.n);
    });
    return {std::move(records)};
}

void write_jsonl(std::ostream& out, const SuiteResult& result) {
    for (const SuiteRecord& rec : result.records) {
        nlohmann::json line = nlohmann::json::parse(rec.report.to_json());
        line["seed"] = rec.seed;
        line["n"] = rec.n;
        line["family"] = rec.family.empty() ? nlohmann::json(nullptr) : nlohmann::json(rec.family);
        out << line.dump() << '\n';
    }
}

}  // namespace nlskp
