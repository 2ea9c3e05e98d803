#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

#include "nlskp/errors.hpp"
#include "nlskp/genpaths.hpp"
#include "nlskp/io.hpp"

#include <cmath>

using namespace nlskp;
using fixtures::vec;

TEST_CASE("rng draws are reproducible and in range", "[genpaths]") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng e(3);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double x = e.exponential(2.0);
        CHECK(x >= 0.0);
        mean += x / 20000.0;
    }
    CHECK(mean == Catch::Approx(2.0).epsilon(0.05));
}

TEST_CASE("ramp, step and sawtooth are exact", "[genpaths]") {
    GenSpec spec;
    spec.kind = PathKind::Ramp;
    spec.n = 3;
    spec.params.amplitude = -1.0;
    const CadlagPath ramp = generate(spec);
    CHECK(ramp.grid().times() == vec({0, 0.5, 1}));
    CHECK(ramp.values() == vec({0, -0.5, -1}));

    spec.kind = PathKind::Step;
    spec.n = 5;
    spec.params.amplitude = 2.0;
    CHECK(generate(spec).values() == vec({0, 0, 2, 2, 2}));

    spec.kind = PathKind::Sawtooth;
    spec.params.amplitude = 1.0;
    spec.params.period = 0.5;
    CHECK(generate(spec).values() == vec({0, 0.5, 0, 0.5, 0}));
}

TEST_CASE("staircase nu is a nonnegative nondecreasing staircase", "[genpaths]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenSpec spec;
        spec.kind = PathKind::StaircaseNu;
        spec.seed = seed;
        spec.n = 128;
        const CadlagPath nu = generate(spec);
        CHECK(nu[0] == 0.0);
        for (Index i = 1; i < nu.size(); ++i) {
            CHECK(nu[i] >= nu[i - 1]);
        }
    }
}

TEST_CASE("every kind is deterministic in its GenSpec", "[genpaths]") {
    for (const char* name : {"brownian", "jump", "ramp", "sawtooth", "step", "staircase_nu"}) {
        GenSpec spec;
        spec.kind = parse_path_kind(name);
        CHECK(to_string(spec.kind) == name);
        spec.seed = 9;
        spec.n = 200;
        spec.horizon = 2.5;
        const CadlagPath a = generate(spec);
        const CadlagPath b = generate(spec);
        CHECK(a.values() == b.values());
        CHECK(a.grid() == b.grid());
        CHECK(a.grid().horizon() == 2.5);
        CHECK(a[0] == 0.0);
    }
    GenSpec s1;
    GenSpec s2;
    s2.seed = 1;
    CHECK(generate(s1).values() != generate(s2).values());
}

TEST_CASE("brownian increments have the requested scale", "[genpaths]") {
    GenSpec spec;
    spec.n = 10001;
    spec.params.volatility = 2.0;
    const CadlagPath w = generate(spec);
    double qv = 0.0;
    for (Index i = 1; i < w.size(); ++i) {
        qv += (w[i] - w[i - 1]) * (w[i] - w[i - 1]);
    }
    CHECK(qv == Catch::Approx(4.0).epsilon(0.05));
}

TEST_CASE("invalid specs are rejected", "[genpaths]") {
    GenSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.n = 4;
    spec.horizon = -1.0;
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.horizon = 1.0;
    spec.params.volatility = -0.1;
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.params.volatility = 1.0;
    spec.kind = PathKind::Sawtooth;
    spec.params.period = 0.0;
    CHECK_THROWS_AS(generate(spec), InputError);
    CHECK_THROWS_AS(parse_path_kind("levy"), InputError);
}

TEST_CASE("GenSpec JSON round trip", "[genpaths][io]") {
    GenSpec spec;
    spec.kind = PathKind::Jump;
    spec.seed = 0xfeedfacecafeULL;
    spec.n = 17;
    spec.horizon = 3.0;
    spec.params.intensity = 2.5;
    spec.params.jump_scale = 0.125;
    const GenSpec back = genspec_from_json(genspec_to_json(spec));
    CHECK(back.kind == spec.kind);
    CHECK(back.seed == spec.seed);
    CHECK(back.n == spec.n);
    CHECK(back.horizon == spec.horizon);
    CHECK(back.params.intensity == spec.params.intensity);
    CHECK(back.params.jump_scale == spec.params.jump_scale);
    CHECK(generate(back).values() == generate(spec).values());

    const GenSpec partial = genspec_from_json(nlohmann::json::parse(R"({"kind":"ramp","n":5})"));
    CHECK(partial.kind == PathKind::Ramp);
    CHECK(partial.n == 5);
    CHECK(partial.horizon == 1.0);
    CHECK_THROWS_AS(genspec_from_json(nlohmann::json::parse(R"({"kind":7})")), InputError);
}
