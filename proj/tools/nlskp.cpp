// Command-line front end: solve, decompose, verify, compare, gen, suite.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 numeric failure.

#include "nlskp/decomposition.hpp"
#include "nlskp/errors.hpp"
#include "nlskp/genpaths.hpp"
#include "nlskp/io.hpp"
#include "nlskp/reflector.hpp"
#include "nlskp/suite.hpp"
#include "nlskp/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace nlskp;

constexpr int kFailed = 1;
constexpr int kInput = 2;
constexpr int kNumeric = 3;

struct Common {
    std::string path;
    std::string pair;
    std::string out;
    double tol_root = Tolerances{}.root;
    double tol_check = Tolerances{}.check;

    Tolerances tolerances() const {
        if (!(tol_root > 0.0) || !(tol_check > 0.0)) {
            throw InputError("tolerances must be positive");
        }
        Tolerances tol;
        tol.root = tol_root;
        tol.check = tol_check;
        return tol;
    }
};

void add_tolerances(CLI::App* cmd, Common& c) {
    cmd->add_option("--tol-root", c.tol_root, "relative root residual (default 1e-12)");
    cmd->add_option("--tol-check", c.tol_check, "slack for verification inequalities (default 1e-9)");
}

// Writes to --out when given, standard output otherwise.
template <class Fn>
void emit(const std::string& out, Fn&& write) {
    if (out.empty() || out == "-") {
        write(std::cout);
        return;
    }
    std::ofstream file(out);
    if (!file) {
        throw InputError("cannot write '" + out + "'");
    }
    write(file);
}

int report_lines(const std::string& out, const std::vector<VerificationReport>& reports) {
    emit(out, [&](std::ostream& os) {
        for (const VerificationReport& r : reports) {
            os << r.to_json() << '\n';
        }
    });
    bool ok = true;
    for (const VerificationReport& r : reports) {
        if (!r.passed) {
            std::cerr << r.check_name << ": FAILED: " << r.details << '\n';
            ok = false;
        }
    }
    return ok ? 0 : kFailed;
}

int cmd_solve(const Common& c) {
    const Tolerances tol = c.tolerances();
    const SkorokhodSolution sol = solve(read_path_csv_file(c.path), load_pair_file(c.pair, tol), tol);
    emit(c.out, [&](std::ostream& os) { write_solution_csv(os, sol); });
    return 0;
}

int cmd_decompose(const Common& c) {
    const Tolerances tol = c.tolerances();
    const Envelopes env = envelopes(read_path_csv_file(c.path), load_pair_file(c.pair, tol), tol);
    const OscillationSchedule sched = oscillation_times(env.Phi, env.Psi);
    emit(c.out, [&](std::ostream& os) { os << schedule_json(sched) << '\n'; });
    return 0;
}

int cmd_verify(const Common& c, std::optional<double> d) {
    const Tolerances tol = c.tolerances();
    const BoundaryPair pair = load_pair_file(c.pair, tol);
    const SkorokhodSolution sol = solve(read_path_csv_file(c.path), pair, tol);
    std::vector<VerificationReport> reports{
        check_definition(sol, pair, tol.check),
        check_oracle_equivalence(sol),
        check_representation(sol),
        check_separation(sol, pair, tol.check),
        check_oscillation_domination(sol, tol.check),
        check_coupled_fixpoint(sol, pair, tol),
    };
    if (d) {
        reports.push_back(check_shift(sol, pair, *d, tol));
    } else {
        for (Index i = 0; i < sol.grid().size(); ++i) {
            reports.push_back(check_shift(sol, pair, sol.grid()[i], tol));
        }
    }
    return report_lines(c.out, reports);
}

struct CompareArgs {
    std::string path2;
    std::string pair2;
    std::string nu;
    double c01 = 0.0;
    double c02 = 0.0;
};

int cmd_compare(const Common& c, const CompareArgs& a) {
    const Tolerances tol = c.tolerances();
    const CadlagPath S1 = read_path_csv_file(c.path);
    const CadlagPath S2 = read_path_csv_file(a.path2);
    const BoundaryPair pair1 = load_pair_file(c.pair, tol);
    const BoundaryPair pair2 = a.pair2.empty() ? pair1 : load_pair_file(a.pair2, tol);
    std::vector<VerificationReport> reports{check_uniform_continuity(S1, S2, pair1, pair2, tol)};
    if (!a.nu.empty()) {
        const CadlagPath nu = read_path_csv_file(a.nu);
        reports.push_back(check_comparison_one_sided(S1, S2, a.c01, a.c02, nu, pair1.R(), tol));
        reports.push_back(check_comparison_net(S1, S2, a.c01, a.c02, nu, pair1, tol));
    }
    if (!a.pair2.empty()) {
        reports.push_back(check_monotone_boundaries(S1, pair1, pair2, tol));
    }
    return report_lines(c.out, reports);
}

int cmd_gen(const Common& c, const std::string& spec_file, GenSpec spec, const std::string& kind) {
    if (!spec_file.empty()) {
        spec = genspec_from_json(read_json_file(spec_file));
    } else {
        spec.kind = parse_path_kind(kind);
    }
    const CadlagPath path = generate(spec);
    emit(c.out, [&](std::ostream& os) { write_path_csv(os, path); });
    return 0;
}

int cmd_suite(const Common& c, const std::string& manifest_file, const std::vector<std::uint64_t>& seeds) {
    const Tolerances tol = c.tolerances();
    Manifest manifest = manifest_file.empty() ? default_manifest() : load_manifest(manifest_file);
    if (!seeds.empty()) {
        manifest.seeds = seeds;
    }
    const SuiteResult result = run_suite(manifest, tol);
    emit(c.out, [&](std::ostream& os) { write_jsonl(os, result); });
    std::size_t failed = 0;
    for (const SuiteRecord& rec : result.records) {
        if (!rec.report.passed) {
            ++failed;
            std::cerr << rec.check_name << " seed " << rec.seed << ": FAILED: " << rec.report.details << '\n';
        }
    }
    std::cerr << result.records.size() - failed << '/' << result.records.size() << " checks passed\n";
    return failed == 0 ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided nonlinear Skorokhod reflection: solver and verification harness"};
    app.require_subcommand(1);
    Common common;

    auto* solve_cmd = app.add_subcommand("solve", "solve one instance; writes the solution CSV");
    auto* decompose_cmd = app.add_subcommand("decompose", "oscillation schedule of one instance as JSON");
    auto* verify_cmd = app.add_subcommand("verify", "run the single-instance checks; JSONL report");
    for (auto* cmd : {solve_cmd, decompose_cmd, verify_cmd}) {
        cmd->add_option("--path", common.path, "driver path CSV (t,value)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--pair", common.pair, "boundary pair JSON")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", common.out, "output file (default: standard output)");
        add_tolerances(cmd, common);
    }
    std::optional<double> shift_at;
    verify_cmd->add_option("--shift", shift_at, "restart instant for the shift check (default: every instant)");

    auto* compare_cmd = app.add_subcommand("compare", "continuity and comparison checks for two drivers");
    CompareArgs cmp;
    compare_cmd->add_option("--path", common.path, "first driver CSV")->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--path2", cmp.path2, "second driver CSV")->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--pair", common.pair, "boundary pair JSON")->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--pair2", cmp.pair2, "second (narrower) pair JSON")->check(CLI::ExistingFile);
    compare_cmd->add_option("--nu", cmp.nu, "nondecreasing nu with S2 <= S1 <= S2 + nu")->check(CLI::ExistingFile);
    compare_cmd->add_option("--c01", cmp.c01, "initial value of the first problem");
    compare_cmd->add_option("--c02", cmp.c02, "initial value of the second problem");
    compare_cmd->add_option("--out", common.out, "JSONL report (default: standard output)");
    add_tolerances(compare_cmd, common);

    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded path CSV");
    GenSpec spec;
    std::string kind = "brownian";
    std::string spec_file;
    gen_cmd->add_option("--spec", spec_file, "GenSpec JSON (overrides the flags below)")->check(CLI::ExistingFile);
    gen_cmd->add_option("--kind", kind, "brownian|jump|ramp|sawtooth|step|staircase_nu");
    gen_cmd->add_option("--seed", spec.seed, "seed (default 0)");
    gen_cmd->add_option("--n", spec.n, "grid size (default 64)");
    gen_cmd->add_option("--horizon", spec.horizon, "horizon T (default 1)");
    gen_cmd->add_option("--volatility", spec.params.volatility, "brownian scale (default 1)");
    gen_cmd->add_option("--intensity", spec.params.intensity, "jumps per unit time (default 5)");
    gen_cmd->add_option("--jump-scale", spec.params.jump_scale, "jump size scale (default 0.5)");
    gen_cmd->add_option("--amplitude", spec.params.amplitude, "ramp/sawtooth/step amplitude (default 1)");
    gen_cmd->add_option("--period", spec.params.period, "sawtooth period (default 0.25)");
    gen_cmd->add_option("--out", common.out, "output CSV (default: standard output)");

    auto* suite_cmd = app.add_subcommand("suite", "run a verification campaign; JSONL report");
    std::string manifest;
    std::vector<std::uint64_t> seeds;
    suite_cmd->add_option("--manifest", manifest, "manifest JSON (default: every check, 200 seeds)")
        ->check(CLI::ExistingFile);
    suite_cmd->add_option("--seed", seeds, "seeds replacing the manifest's list");
    suite_cmd->add_option("--out", common.out, "JSONL report (default: standard output)");
    add_tolerances(suite_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInput;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(common);
        }
        if (*decompose_cmd) {
            return cmd_decompose(common);
        }
        if (*verify_cmd) {
            return cmd_verify(common, shift_at);
        }
        if (*compare_cmd) {
            return cmd_compare(common, cmp);
        }
        if (*gen_cmd) {
            return cmd_gen(common, spec_file, spec, kind);
        }
        return cmd_suite(common, manifest, seeds);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kInput;
    }
}
