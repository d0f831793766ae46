#include <doctest.h>

#include <latslice/enumerate.hpp>

#include "test_util.hpp"

using namespace latslice;
using namespace latslice::testing;

namespace {

Body random_small_body(int d, Rng& rng) {
    switch (rng.below(3)) {
        case 0: {
            Vec hw(d);
            for (int i = 0; i < d; ++i) hw[i] = rng.uniform(0.5, 2.0);
            return Body::box(hw);
        }
        case 1: {
            Vec s(d);
            for (int i = 0; i < d; ++i) s[i] = rng.uniform(0.5, 2.0);
            return Body::cross_polytope(s);
        }
        default:
            return Body::ball(d, rng.uniform(0.6, 2.0));
    }
}

}  // namespace

TEST_CASE("enumerate_in_body basics") {
    PointSet cube = enumerate_in_body(Lattice::integer(2), Body::box(dv({1, 1})));
    CHECK(cube.size() == 9);
    CHECK(cube.contains_zero);

    PointSet cross = enumerate_in_body(Lattice::integer(3), Body::cross_polytope(dv({1, 1, 1})));
    CHECK(cross.size() == 7);

    PointSet ball = enumerate_in_body(Lattice::integer(2), Body::ball(2, 1.5));
    // Oracle: scan [-2,2]^2 directly.
    int expected = 0;
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y)
            if (x * x + y * y <= 1.5 * 1.5) ++expected;
    CHECK(static_cast<int>(ball.size()) == expected);
    CHECK(ball.size() == 9);
}

TEST_CASE("point sets are closed under negation and basis-consistent") {
    Rng rng(21);
    Lattice lat = random_lattice(3, rng);
    PointSet ps = enumerate_in_body(lat, Body::ball(3, 2.5));
    REQUIRE(ps.contains_zero);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK((lat.point(ps.coeffs[i]) - ps.points[i]).norm() < 1e-9);
        bool found = false;
        IntVec neg = -ps.coeffs[i];
        for (const IntVec& c : ps.coeffs)
            if (c == neg) { found = true; break; }
        CHECK(found);
    }
}

TEST_CASE("grid scan oracle basics") {
    PointSet tiny = grid_scan_oracle(Lattice::integer(2), Body::ball(2, 0.5));
    CHECK(tiny.size() == 1);
    CHECK(tiny.contains_zero);

    PointSet box = grid_scan_oracle(Lattice::integer(2), Body::box(dv({2, 1})));
    CHECK(box.size() == 15);
}

TEST_CASE("enumerate_in_body equals grid_scan_oracle on random instances") {
    Rng rng(22);
    for (int rep = 0; rep < 40; ++rep) {
        int d = 2 + static_cast<int>(rng.below(3));
        Lattice lat = random_lattice(d, rng);
        Body body = random_small_body(d, rng);
        PointSet a = enumerate_in_body(lat, body);
        PointSet b = grid_scan_oracle(lat, body);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.coeffs[i] == b.coeffs[i]);
    }
}

TEST_CASE("slice_count on the cube and the cross-polytope") {
    PointSet cube = enumerate_in_body(Lattice::integer(2), Body::box(dv({1, 1})));
    SliceCount sc = slice_count(cube, iv({1, 0}));
    CHECK(sc.on_hyperplane == 3);
    CHECK(sc.total == 9);

    PointSet cross = enumerate_in_body(Lattice::integer(3), Body::cross_polytope(dv({1, 1, 1})));
    SliceCount sc2 = slice_count(cross, iv({1, 0, 0}));
    CHECK(sc2.on_hyperplane == 5);
    CHECK(sc2.total == 7);

    // A normal orthogonal to nothing keeps only the origin.
    SliceCount sc3 = slice_count(cube, iv({2, 3}));
    CHECK(sc3.on_hyperplane == 1);
}

TEST_CASE("slice_count invariances and errors") {
    PointSet cube = enumerate_in_body(Lattice::integer(2), Body::box(dv({1, 1})));
    IntVec y = iv({1, 2});
    CHECK(slice_count(cube, y).on_hyperplane == slice_count(cube, IntVec(-y)).on_hyperplane);
    CHECK(slice_count(cube, y).on_hyperplane == slice_count(cube, IntVec(2 * y)).on_hyperplane);
    CHECK_THROWS_AS(slice_count(cube, iv({0, 0})), Error);
    // Ambient overload agrees on integer data.
    CHECK(slice_count(cube, dv({1, 0})).on_hyperplane == 3);
}

TEST_CASE("enlarging a box never loses points") {
    Rng rng(23);
    Lattice lat = random_lattice(2, rng);
    std::size_t prev = 0;
    for (double h : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        PointSet ps = enumerate_in_body(lat, Body::box(dv({h, h})));
        CHECK(ps.size() >= prev);
        prev = ps.size();
    }
}

TEST_CASE("budget guards fire") {
    Mat b = 1e-3 * Mat::Identity(2, 2);
    CHECK_THROWS_WITH_AS(enumerate_in_body(Lattice(b), Body::ball(2, 10)),
                         doctest::Contains("too expensive"), Error);
    CHECK_THROWS_WITH_AS(grid_scan_oracle(Lattice(b), Body::ball(2, 10)),
                         doctest::Contains("too expensive"), Error);
}

TEST_CASE("csv export lists coefficients then coordinates") {
    PointSet ps = enumerate_in_body(Lattice::integer(2), Body::ball(2, 1.0));
    std::string csv = point_set_csv(ps);
    CHECK(csv.substr(0, 12) == "c0,c1,x0,x1\n");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 points
}
