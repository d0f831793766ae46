#include "latslice/suite.hpp"

namespace latslice {
namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Body hpoly_with_diagonal(int d, double axis_offset, double diag_offset) {
    Mat normals(d + 1, d);
    normals.setZero();
    for (int i = 0; i < d; ++i) normals(i, i) = 1;
    normals.row(d).setOnes();
    Vec offsets = Vec::Constant(d + 1, axis_offset);
    offsets[d] = diag_offset;
    return Body::hpolytope(normals, offsets);
}

}  // namespace

std::vector<SuiteEntry> standard_suite() {
    std::vector<SuiteEntry> s;
    auto add = [&](std::string id, Body b, bool degenerate = false) {
        s.push_back({std::move(id), std::move(b), degenerate});
    };

    add("box_d2_hw1", Body::box(vec({1, 1})));
    add("box_d2_hw5", Body::box(vec({5, 5})));
    add("box_d2_2x1", Body::box(vec({2, 1})));
    add("cross_d2", Body::cross_polytope(vec({1, 1})));
    add("ball_d2_r1.5", Body::ball(2, 1.5));
    add("ellipsoid_d2_2x1", Body::ellipsoid(vec({0.25, 1}).asDiagonal()));
    add("hexagon_d2", hpoly_with_diagonal(2, 1.2, 1.6));

    add("box_d3_hw1", Body::box(vec({1, 1, 1})));
    add("box_d3_mixed", Body::box(vec({1.5, 1, 1})));
    add("cross_d3", Body::cross_polytope(vec({1, 1, 1})));
    add("cross_d3_2x1x1", Body::cross_polytope(vec({2, 1, 1})));
    add("ball_d3_r1.5", Body::ball(3, 1.5));
    add("hpoly_d3", hpoly_with_diagonal(3, 1.2, 1.8));

    add("box_d4_hw1", Body::box(vec({1, 1, 1, 1})));
    add("cross_d4", Body::cross_polytope(vec({1, 1, 1, 1})));
    add("ball_d4_r1.5", Body::ball(4, 1.5));
    add("hpoly_d4", hpoly_with_diagonal(4, 1.2, 2.2));

    add("box_d5_hw1", Body::box(Vec::Constant(5, 1.0)));
    add("cross_d5", Body::cross_polytope(Vec::Constant(5, 1.0)));
    add("ball_d5_r1.5", Body::ball(5, 1.5));

    add("box_d6_hw1", Body::box(Vec::Constant(6, 1.0)));
    add("cross_d6", Body::cross_polytope(Vec::Constant(6, 1.0)));
    add("ball_d6_r1.5", Body::ball(6, 1.5));

    // Thin bodies: vol < d^-d and rank-deficient lattice intersection.
    add("thin_box_d2", Body::box(vec({1.0, 0.05})), true);
    add("thin_box_d3", Body::box(vec({1.0, 0.2, 0.02})), true);
    add("thin_box_d4", Body::box(vec({1.0, 1.0, 0.04, 0.004})), true);

    return s;
}

}  // namespace latslice
