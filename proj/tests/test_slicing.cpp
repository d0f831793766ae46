#include <doctest.h>

#include <latslice/slicing.hpp>

#include "test_util.hpp"

using namespace latslice;
using namespace latslice::testing;

TEST_CASE("recommend_s and threshold_p formulas") {
    CHECK(recommend_s(3, 1.0, 2.0) == doctest::Approx(2.0));
    CHECK(recommend_s(2, 16.0, 2.0) == doctest::Approx(2.0 * std::pow(16.0, 0.5)));
    // Clamped below at 1.
    CHECK(recommend_s(4, 1e-9, 1.0) == doctest::Approx(1.0));
    CHECK(threshold_p(2.0, 4.0, 0.5) == doctest::Approx(0.0625));
    CHECK(threshold_p(1.0, 0.1, 0.5) == doctest::Approx(1.0));  // capped at 1
}

TEST_CASE("finder config validation") {
    FinderConfig bad;
    bad.big_C = 0.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = FinderConfig{};
    bad.small_c = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("best_slice_exact on the cube [-1,1]^3") {
    Lattice z3 = Lattice::integer(3);
    PointSet ps = enumerate_in_body(z3, Body::box(dv({1, 1, 1})));
    REQUIRE(ps.size() == 27);
    SliceResult r = best_slice_exact(z3, ps);
    CHECK(r.on_count == 9);
    CHECK(r.total == 27);
    // Lex-smallest primitive normal among the coordinate hyperplanes.
    CHECK(r.normal_coeffs == iv({0, 0, 1}));
}

TEST_CASE("best_slice_exact on cross-polytopes gives (2d-1)/(2d+1)") {
    for (int d = 2; d <= 6; ++d) {
        Lattice lat = Lattice::integer(d);
        PointSet ps = enumerate_in_body(lat, Body::cross_polytope(Vec::Ones(d)));
        REQUIRE(static_cast<long long>(ps.size()) == 2 * d + 1);
        SliceResult r = best_slice_exact(lat, ps);
        CHECK(r.on_count == 2 * d - 1);
        CHECK(r.total == 2 * d + 1);
    }
}

TEST_CASE("best_slice_exact on the radius-1.5 disk") {
    Lattice z2 = Lattice::integer(2);
    PointSet ps = enumerate_in_body(z2, Body::ball(2, 1.5));
    REQUIRE(ps.size() == 9);
    SliceResult r = best_slice_exact(z2, ps);
    // Max collinear-through-origin count is 3 (e.g. the axis points).
    CHECK(r.on_count == 3);
    CHECK(r.total == 9);
}

TEST_CASE("dual search agrees with the exact oracle on small instances") {
    Rng rng(51);
    for (int rep = 0; rep < 15; ++rep) {
        int d = 2 + static_cast<int>(rng.below(2));
        Lattice lat = random_lattice(d, rng);
        PointSet ps = enumerate_in_body(lat, Body::ball(d, rng.uniform(1.0, 2.5)));
        if (ps.size() < 3) continue;
        SliceResult exact = best_slice_exact(lat, ps);
        SliceResult dual = best_slice_dual_search(lat, ps, 8.0);
        CHECK(dual.on_count <= exact.on_count);
        // With a generous norm bound the heuristic matches on these tiny sets.
        CHECK(dual.on_count == exact.on_count);
    }
}

TEST_CASE("degenerate_hyperplane is exactly orthogonal to a planar point set") {
    Lattice z3 = Lattice::integer(3);
    // Points of the thin box [-2,2]^2 x [-0.1, 0.1]: all in the z = 0 plane.
    PointSet ps = enumerate_in_body(z3, Body::box(dv({2, 2, 0.1})));
    SliceResult r = degenerate_hyperplane(z3, ps);
    CHECK(r.method == SliceMethod::degenerate);
    CHECK(r.on_count == r.total);
    CHECK(r.normal_coeffs == iv({0, 0, 1}));
    for (const auto& c : ps.coeffs) {
        std::int64_t dot = 0;
        for (int j = 0; j < 3; ++j) dot += c[j] * r.normal_coeffs[j];
        CHECK(dot == 0);
    }
}

TEST_CASE("randomized finder accepts a good hyperplane on the cube") {
    Lattice z3 = Lattice::integer(3);
    Body cube = Body::box(dv({1, 1, 1}));
    PointSet ps = enumerate_in_body(z3, cube);
    FinderConfig cfg;
    cfg.seed = 5;
    Rng rng(cfg.seed);
    SliceResult r = randomized_finder(z3, cube, ps, cfg, rng);
    CHECK(r.method == SliceMethod::randomized);
    CHECK(!r.normal_coeffs.isZero());
    CHECK(r.total == 27);
    double s = recommend_s(3, 8.0, cfg.big_C);
    double p = threshold_p(s, std::sqrt(3.0), cfg.small_c);
    CHECK(2.0 * r.on_count >= p * r.total);
    CHECK(r.attempts >= 1);
}

TEST_CASE("randomized finder on the d = 4 cross-polytope") {
    Lattice z4 = Lattice::integer(4);
    Body cross = Body::cross_polytope(Vec::Ones(4));
    PointSet ps = enumerate_in_body(z4, cross);
    FinderConfig cfg;
    cfg.seed = 6;
    Rng rng(cfg.seed);
    SliceResult r = randomized_finder(z4, cross, ps, cfg, rng);
    CHECK(r.ratio() > 0);
    // Never better than the exhaustive oracle.
    SliceResult exact = best_slice_exact(z4, ps);
    CHECK(r.on_count <= exact.on_count);
}

TEST_CASE("randomized finder is deterministic given the seed") {
    Lattice z3 = Lattice::integer(3);
    Body cube = Body::box(dv({1, 1, 1}));
    PointSet ps = enumerate_in_body(z3, cube);
    FinderConfig cfg;
    auto run = [&] {
        Rng rng(99);
        return randomized_finder(z3, cube, ps, cfg, rng);
    };
    SliceResult a = run(), b = run();
    CHECK(a.normal_coeffs == b.normal_coeffs);
    CHECK(a.attempts == b.attempts);
}

TEST_CASE("randomized finder rejects rank-deficient point sets") {
    Lattice z3 = Lattice::integer(3);
    PointSet flat = enumerate_in_body(z3, Body::box(dv({2, 2, 0.1})));
    FinderConfig cfg;
    Rng rng(1);
    CHECK_THROWS_WITH_AS(randomized_finder(z3, Body::box(dv({2, 2, 0.1})), flat, cfg, rng),
                         doctest::Contains("not full dimensional"), Error);
}

TEST_CASE("verify_bound on the cube reports the exact best ratio") {
    Lattice z3 = Lattice::integer(3);
    FinderConfig cfg;
    cfg.seed = 11;
    Rng rng(cfg.seed);
    BoundReport rep = verify_bound(z3, Body::box(dv({1, 1, 1})), cfg, rng, "cube");
    CHECK(rep.d == 3);
    CHECK(rep.vol == doctest::Approx(8.0));
    CHECK(rep.best_ratio_num == 9);
    CHECK(rep.best_ratio_den == 27);
    CHECK_FALSE(rep.degenerate);
    REQUIRE(rep.implied_c_theorem.has_value());
    // ratio * d * vol^(1/(d-1)) = (1/3) * 3 * sqrt(8)
    CHECK(*rep.implied_c_theorem == doctest::Approx(std::sqrt(8.0)));
    REQUIRE(rep.implied_alpha_q1.has_value());
    CHECK(*rep.implied_alpha_q1 == doctest::Approx(2.0 / 3.0));
    REQUIRE(rep.ratio_randomized.has_value());
    CHECK(rep.best_ratio() >= *rep.ratio_randomized - 1e-12);
}

TEST_CASE("verify_bound on the d = 4 cross-polytope matches the worked numbers") {
    Lattice z4 = Lattice::integer(4);
    FinderConfig cfg;
    cfg.seed = 12;
    Rng rng(cfg.seed);
    BoundReport rep = verify_bound(z4, Body::cross_polytope(Vec::Ones(4)), cfg, rng, "cross4");
    CHECK(rep.best_ratio_num == 7);
    CHECK(rep.best_ratio_den == 9);
    CHECK(rep.vol == doctest::Approx(2.0 / 3.0));
    REQUIRE(rep.implied_alpha_q1.has_value());
    CHECK(*rep.implied_alpha_q1 ==
          doctest::Approx((7.0 / 9.0) * std::pow(2.0 / 3.0, 0.25)).epsilon(1e-9));
}

TEST_CASE("verify_bound marks thin boxes as degenerate with ratio 1") {
    Lattice z2 = Lattice::integer(2);
    FinderConfig cfg;
    cfg.seed = 13;
    Rng rng(cfg.seed);
    BoundReport rep = verify_bound(z2, Body::box(dv({1.0, 0.05})), cfg, rng, "thin");
    CHECK(rep.degenerate);
    CHECK(rep.best_ratio_num == rep.best_ratio_den);
    CHECK(rep.best_method == "degenerate");
    CHECK_FALSE(rep.implied_c_theorem.has_value());
    CHECK_FALSE(rep.implied_alpha_q1.has_value());
}

TEST_CASE("verify_bound applies John normalization to a skewed ellipsoid") {
    Lattice z2 = Lattice::integer(2);
    Mat a = dv({1.0 / 16.0, 4.0}).asDiagonal();  // semi-axes 4 and 0.5
    FinderConfig cfg;
    cfg.seed = 14;
    Rng rng(cfg.seed);
    BoundReport rep = verify_bound(z2, Body::ellipsoid(a), cfg, rng, "skewed");
    CHECK(rep.john_applied);
    CHECK(rep.circumradius <= 1.1 * 2 * std::sqrt(rep.vol) * (1 + 1e-9));
    CHECK(rep.vol == doctest::Approx(M_PI * 4 * 0.5));
    CHECK(rep.best_ratio() > 0);
}

TEST_CASE("ratio ordering: best >= dual search >= nothing, on random instances") {
    Rng rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        Lattice lat = random_lattice(3, rng);
        PointSet ps = enumerate_in_body(lat, Body::ball(3, 2.0));
        if (ps.size() < 5) continue;
        SliceResult exact = best_slice_exact(lat, ps);
        SliceResult dual = best_slice_dual_search(lat, ps, 4.0);
        CHECK(exact.on_count >= dual.on_count);
        CHECK(exact.on_count >= 1);
        // The reported normal really achieves the reported count.
        SliceCount sc = slice_count(ps, exact.normal_coeffs);
        CHECK(sc.on_hyperplane == exact.on_count);
    }
}
