#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "temp_dir.hpp"

#include "nlskp/errors.hpp"
#include "nlskp/io.hpp"
#include "nlskp/reflector.hpp"
#include "nlskp/suite.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

using namespace nlskp;
using fixtures::vec;
using nlohmann::json;

TEST_CASE("pair JSON with constant, inline and file offsets", "[io]") {
    fixtures::TempDir dir;
    dir.write("upper.csv", "t,value\n0,1\n0.5,1.5\n");
    const json j = json::parse(R"({
        "L": {"family": "sine", "eps": 0.5, "omega": 1.0, "offset": {"file": "upper.csv"}},
        "R": {"family": "sine", "eps": 0.5, "omega": 1.0, "offset": {"times": [0, 0.25], "values": [0, -0.5]}}
    })");
    const std::string file = dir.write("pair.json", j.dump());
    const BoundaryPair pair = load_pair_file(file);
    CHECK(pair.L().family() == Family::Sine);
    CHECK(pair.L().offset().grid().times() == vec({0, 0.5}));
    CHECK(pair.R().offset().values() == vec({0, -0.5}));
    CHECK(pair.offset_grid().size() == 3);
    CHECK(pair.alpha() == 1.0);

    const BoundaryPair back = pair_from_json(pair_to_json(pair));
    CHECK(back.L().offset().values() == pair.L().offset().values());
    CHECK(back.R().eps() == 0.5);

    const BoundaryPair scaled = pair_from_json(json::parse(R"({
        "L": {"family": "scaled", "a": 2, "offset": {"const": 1}},
        "R": {"family": "scaled", "a": 2, "offset": {"const": 0}}})"));
    CHECK(scaled.alpha() == 2.0);
    CHECK(pair_to_json(scaled)["L"]["offset"]["const"] == 1.0);
}

TEST_CASE("malformed pair JSON is an input error", "[io]") {
    const char* bad[] = {
        R"([])",
        R"({"L": {"family": "linear", "offset": {"const": 1}}})",
        R"({"L": {"family": "cubic", "offset": {"const": 1}}, "R": {"family": "cubic", "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {"const": "1"}}, "R": {"family": "linear", "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {"const": 0}}, "R": {"family": "linear", "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {"const": 0}}, "R": {"family": "linear", "offset": {"const": 1}}})",
        R"({"L": {"family": "scaled", "a": 1, "offset": {"const": 1}}, "R": {"family": "scaled", "a": 2, "offset": {"const": 0}}})",
        R"({"L": {"family": "sine", "eps": 0.5, "omega": 3, "offset": {"const": 1}}, "R": {"family": "sine", "eps": 0.5, "omega": 3, "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {"file": "missing.csv"}}, "R": {"family": "linear", "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {"times": [0.5], "values": [1]}}, "R": {"family": "linear", "offset": {"const": 0}}})",
        R"({"L": {"family": "linear", "offset": {}}, "R": {"family": "linear", "offset": {"const": 0}}})",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(pair_from_json(json::parse(text)), InputError);
    }
    fixtures::TempDir dir;
    CHECK_THROWS_AS(load_pair_file((dir.path() / "none.json").string()), InputError);
    CHECK_THROWS_AS(load_pair_file(dir.write("broken.json", "{\"L\":")), InputError);
}

TEST_CASE("path JSON round trip", "[io]") {
    const CadlagPath p = fixtures::path({0, 0.1, 0.7}, {1, -2, 0.5});
    const CadlagPath back = path_from_json(path_to_json(p));
    CHECK(back.grid() == p.grid());
    CHECK(back.values() == p.values());
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"times":[0,1],"values":[1]})")), InputError);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"times":[0,1]})")), InputError);
}

// ---------------------------------------------------------------------------------------------

TEST_CASE("seed mixing and instances are deterministic", "[suite]") {
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        seen.insert(mix_seed(s, 0));
    }
    CHECK(seen.size() == 1000);

    const Instance a = make_instance(Family::Sine, 17, 64);
    const Instance b = make_instance(Family::Sine, 17, 64);
    CHECK(a.S.values() == b.S.values());
    CHECK(a.pair.L().offset().values() == b.pair.L().offset().values());
    CHECK(a.S.size() == 64);
    CHECK(a.pair.alpha() >= 0.25);
}

TEST_CASE("random pairs satisfy the structural assumptions", "[suite][property]") {
    for (Family family : {Family::Linear, Family::Scaled, Family::Sine}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Rng rng(seed);
            const BoundaryPair pair = random_pair(family, rng);
            const ValidationReport v = validate_assumption(pair, pair.offset_grid(), -5.0, 5.0, 401);
            CHECK(v.passed);
            CHECK(pair.alpha() >= 0.25 * pair.L().scale() - 1e-15);
        }
    }
}

TEST_CASE("every seeded check passes on a small campaign", "[suite]") {
    for (const std::string& check : seeded_checks()) {
        for (Family family : {Family::Linear, Family::Scaled, Family::Sine}) {
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                for (Index n : {Index{8}, Index{64}}) {
                    const VerificationReport r = run_seeded_check(check, family, seed, n);
                    INFO(check << " " << to_string(family) << " seed " << seed << " n " << n << ": " << r.details);
                    CHECK(r.passed);
                    CHECK(r.check_name == check);
                }
            }
        }
    }
    CHECK_THROWS_AS(run_seeded_check("nonsense", Family::Linear, 0, 8), InputError);
}

TEST_CASE("manifest parsing", "[suite][io]") {
    const Manifest empty = parse_manifest(json::object());
    CHECK(empty.checks.empty());
    CHECK(empty.instances.empty());
    CHECK(run_suite(empty).records.empty());
    CHECK(run_suite(empty).all_passed());

    const Manifest m = parse_manifest(json::parse(
        R"({"checks":["definition","shift"],"seeds":{"first":10,"count":3},"n":16,"families":["sine"]})"));
    CHECK(m.checks == std::vector<std::string>{"definition", "shift"});
    CHECK(m.seeds == std::vector<std::uint64_t>{10, 11, 12});
    CHECK(m.sizes == std::vector<Index>{16});
    CHECK(m.families == std::vector<Family>{Family::Sine});
    CHECK(parse_manifest(json::parse(R"({"checks":["definition"]})")).seeds.size() == 200);
    CHECK(parse_manifest(json::parse(R"({"seeds":[5,3]})")).seeds == std::vector<std::uint64_t>{5, 3});
    CHECK(default_manifest().checks.size() == seeded_checks().size());

    CHECK_THROWS_AS(parse_manifest(json::parse(R"({"checks":["bogus"]})")), InputError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"({"families":["cubic"]})")), InputError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"({"n":[0]})")), InputError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"({"instances":[{"check":"j1_bound"}]})")), InputError);
    CHECK_THROWS_AS(parse_manifest(json::parse("[1,2]")), InputError);
}

TEST_CASE("suite runs are ordered and thread-count independent", "[suite]") {
    const Manifest m = parse_manifest(json::parse(
        R"({"checks":["separation","definition"],"seeds":[3,1,2],"n":[8,32]})"));
    const SuiteResult one = run_suite(m, {}, 1);
    const SuiteResult four = run_suite(m, {}, 4);
    REQUIRE(one.records.size() == 2 * 3 * 3 * 2);
    CHECK(one.all_passed());
    CHECK(one.records.front().check_name == "definition");
    CHECK(one.records.front().seed == 1);
    std::ostringstream a;
    std::ostringstream b;
    write_jsonl(a, one);
    write_jsonl(b, four);
    CHECK(a.str() == b.str());

    std::istringstream lines(a.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        CHECK(j.contains("check_name"));
        CHECK(j.contains("seed"));
        CHECK(j.contains("family"));
        CHECK(j.contains("n"));
        ++count;
    }
    CHECK(count == 36);
}

TEST_CASE("explicit instances and negative controls in a manifest", "[suite][negative]") {
    const json band = json::parse(R"({"L":{"family":"linear","offset":{"const":1}},
                                       "R":{"family":"linear","offset":{"const":0}}})");
    const json path = json::parse(R"({"times":[0,1,2],"values":[0,-0.5,-1.5]})");
    json m;
    for (const char* check : {"definition", "shift", "oscillation_domination", "representation", "separation",
                              "oracle_equivalence", "coupled_fixpoint"}) {
        m["instances"].push_back({{"check", check}, {"path", path}, {"pair", band}, {"d", 1.0}});
    }
    m["instances"].push_back({{"check", "definition"},
                              {"path", path},
                              {"pair", band},
                              {"corrupt", {{"kind", "zero_regulator"}}}});
    m["instances"].push_back({{"check", "oracle_equivalence"},
                              {"path", path},
                              {"pair", band},
                              {"corrupt", {{"kind", "bump_regulator"}, {"index", 1}, {"delta", 1e-9}}}});
    const SuiteResult result = run_suite(parse_manifest(m));
    REQUIRE(result.records.size() == 9);
    CHECK_FALSE(result.all_passed());
    int failed = 0;
    for (const SuiteRecord& rec : result.records) {
        CHECK(rec.family.empty());
        failed += rec.report.passed ? 0 : 1;
    }
    CHECK(failed == 2);

    CHECK_THROWS_AS(parse_manifest(json::parse(R"({"instances":[{"check":"definition","pair":{}}]})")),
                    InputError);
}

TEST_CASE("corruptions", "[suite][negative]") {
    const SkorokhodSolution sol = solve(fixtures::band_driver(), fixtures::linear_band(0.0, 1.0));
    const SkorokhodSolution zero = corrupt(sol, {Corruption::Kind::ZeroRegulator});
    CHECK(zero.K.values() == vec({0, 0, 0}));
    CHECK(zero.X.values() == sol.S.values());
    const SkorokhodSolution bump = corrupt(sol, {Corruption::Kind::BumpRegulator, 1, 0.25});
    CHECK(bump.K.values() == vec({0, 0.75, 1.5}));
    CHECK(bump.Kr.values() == vec({0, 0.75, 1.5}));
    CHECK(bump.X[1] == 0.25);
    CHECK(corrupt(sol, {}).K.values() == sol.K.values());
    CHECK_THROWS_AS(corrupt(sol, {Corruption::Kind::BumpRegulator, 9, 1.0}), InputError);
}
