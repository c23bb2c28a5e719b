#include <doctest.h>

#include "ag/core.hpp"
#include "test_helpers.hpp"

using ag::Point3;
using ag::distance;

TEST_CASE("distance basics") {
    CHECK(distance(Point3{0, 0, 0}, Point3{0, 0, 0}) == 0.0);
    CHECK(distance(Point3{0, 0, 0}, Point3{1, 2, 2}) == 3.0);
    CHECK(distance(Point3{1, 1, 1}, Point3{4, 5, 1}) == 5.0);
}

TEST_CASE("distance rejects non-finite input") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(distance(Point3{inf, 0, 0}, Point3{}), ag::contract_error);
    CHECK_THROWS_AS(distance(Point3{}, Point3{0, std::nan(""), 0}), ag::contract_error);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    helpers::Rng rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = [&] {
            return Point3{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        };
        const Point3 a = p(), b = p(), c = p();
        CHECK(distance(a, b) == distance(b, a));
        const double ab = distance(a, b);
        const double bc = distance(b, c);
        const double ac = distance(a, c);
        CHECK(ac <= ab + bc + 1e-9 * (ab + bc + ac));
    }
}

TEST_CASE("vector distance checks dimensions") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    CHECK_THROWS_AS(ag::distance(a, b), ag::contract_error);
    CHECK(ag::distance(a, a) == 0.0);
}
