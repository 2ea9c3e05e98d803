#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "nlskp/errors.hpp"
#include "nlskp/genpaths.hpp"
#include "nlskp/pathkit.hpp"

#include <sstream>

using namespace nlskp;
using fixtures::path;
using fixtures::vec;

TEST_CASE("eval is a right-continuous step lookup", "[pathkit]") {
    const CadlagPath p = path({0, 1, 2}, {5, 7, 9});
    CHECK(eval(p, 1.5) == 7);
    CHECK(eval(p, 0.0) == 5);
    CHECK(eval(p, 1.0) == 7);
    CHECK(eval(p, 10.0) == 9);
    CHECK_THROWS_AS(eval(p, -0.1), DomainError);
}

TEST_CASE("left limits and the two pre-origin conventions", "[pathkit]") {
    const CadlagPath p = path({0, 1, 2}, {5, 7, 9});
    CHECK(left_limit(p, 2, PreOrigin::Input) == 7);
    CHECK(left_limit(p, 0, PreOrigin::Input) == 5);
    const CadlagPath k = path({0, 1}, {0.3, 0.4});
    CHECK(left_limit(k, 0, PreOrigin::Regulator) == 0.0);
    CHECK_THROWS_AS(left_limit(p, 3, PreOrigin::Input), DomainError);
}

TEST_CASE("window extrema and oscillation", "[pathkit]") {
    const CadlagPath p = path({0, 1, 2}, {1, -2, 3});
    const Extrema e = window_extrema(p, 0, 2);
    CHECK(e.min == -2);
    CHECK(e.max == 3);
    const Extrema single = window_extrema(p, 1, 1);
    CHECK(single.min == -2);
    CHECK(single.max == -2);
    CHECK(oscillation(p, 0, 2) == 5);
    CHECK(oscillation(path({0, 1, 2}, {0, 0, 0}), 0, 2) == 0);
    CHECK(oscillation(path({0, 1}, {0, 4}), 0, 1) == 4);
    CHECK_THROWS_AS(window_extrema(p, 2, 1), DomainError);
}

TEST_CASE("window extrema agree with a direct scan", "[pathkit][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenSpec spec;
        spec.seed = seed;
        spec.n = 40;
        const CadlagPath p = generate(spec);
        const auto v = fixtures::stdvec(p.values());
        for (Index i = 0; i < p.size(); i += 3) {
            for (Index j = i; j < p.size(); j += 5) {
                const auto [lo, hi] = oracle::window_extrema(v, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                const Extrema e = window_extrema(p, i, j);
                CHECK(e.min == lo);
                CHECK(e.max == hi);
            }
        }
    }
}

TEST_CASE("shift operators", "[pathkit]") {
    const CadlagPath p = path({0, 1, 2}, {5, 7, 9});
    const CadlagPath centered = shift_centered(p, 1.0);
    CHECK(centered == path({0, 1}, {0, 2}));
    CHECK(shift_centered(p, 0.0) == path({0, 1, 2}, {0, 2, 4}));
    CHECK(shift_centered(path({0, 1, 2}, {3, 3, 3}), 2.0) == path({0}, {0}));

    CHECK(shift_plain(p, 1.0) == path({0, 1}, {7, 9}));
    CHECK(shift_plain(p, 0.0) == p);
    CHECK(shift_plain(path({0, 1, 2}, {3, 3, 3}), 1.0) == path({0, 1}, {3, 3}));

    CHECK_THROWS_AS(shift_plain(p, 0.5), DomainError);
    CHECK_THROWS_AS(shift_centered(p, 0.5), DomainError);
}

TEST_CASE("restrict_from accepts instants between samples", "[pathkit]") {
    const CadlagPath p = path({0, 1, 2}, {5, 7, 9});
    CHECK(restrict_from(p, 0.5) == path({0, 0.5, 1.5}, {5, 7, 9}));
    CHECK(restrict_from(p, 1.0) == path({0, 1}, {7, 9}));
}

TEST_CASE("grid validation", "[pathkit]") {
    CHECK_THROWS_AS(TimeGrid(vec({0.5, 1})), InputError);
    CHECK_THROWS_AS(TimeGrid(vec({0, 1, 1})), InputError);
    CHECK_THROWS_AS(TimeGrid(nlskp::Vector()), InputError);
    CHECK_THROWS_AS(CadlagPath(TimeGrid(vec({0, 1})), vec({1})), InputError);
    CHECK(TimeGrid::uniform(3, 1.0) == TimeGrid(vec({0, 0.5, 1})));
    CHECK(TimeGrid().size() == 1);
}

TEST_CASE("merge, truncate and resample", "[pathkit]") {
    const TimeGrid a(vec({0, 1, 3}));
    const TimeGrid b(vec({0, 2, 3, 4}));
    CHECK(merge(a, b) == TimeGrid(vec({0, 1, 2, 3, 4})));
    CHECK(truncate(merge(a, b), 2.5) == TimeGrid(vec({0, 1, 2})));
    const CadlagPath p = path({0, 1, 3}, {1, 2, 3});
    CHECK(resample(p, merge(a, b)) == path({0, 1, 2, 3, 4}, {1, 2, 2, 3, 3}));
    CHECK(running_max(vec({1, 0, 2, 1})) == vec({1, 1, 2, 2}));
    CHECK(running_min(vec({1, 0, 2, -1})) == vec({1, 0, 0, -1}));
}

TEST_CASE("path CSV round trip is exact", "[pathkit][io]") {
    GenSpec spec;
    spec.seed = 7;
    const CadlagPath p = generate(spec);
    std::stringstream buf;
    write_path_csv(buf, p);
    CHECK(read_path_csv(buf) == p);
}

TEST_CASE("path CSV rejects malformed input", "[pathkit][io]") {
    std::istringstream no_header("0,1\n");
    CHECK_THROWS_AS(read_path_csv(no_header), InputError);
    std::istringstream bad_number("t,value\n0,abc\n");
    CHECK_THROWS_AS(read_path_csv(bad_number), InputError);
    std::istringstream not_increasing("t,value\n0,1\n0,2\n");
    CHECK_THROWS_AS(read_path_csv(not_increasing), InputError);
    std::istringstream empty("t,value\n");
    CHECK_THROWS_AS(read_path_csv(empty), InputError);
    CHECK_THROWS_AS(read_path_csv_file("/nonexistent/path.csv"), InputError);
}
