#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "latslice/rng.hpp"
#include "latslice/types.hpp"

namespace latslice {

// Origin-symmetric convex bodies. All variants satisfy x in K <=> -x in K
// by construction; membership is closed (boundary counts as inside).

struct Ellipsoid {
    Mat shape;  // symmetric positive definite A; K = { x : x^T A x <= 1 }
};

struct Box {
    Vec half_widths;  // K = { x : |x_i| <= h_i }
};

struct CrossPolytope {
    Vec scales;  // K = { x : sum |x_i| / s_i <= 1 }
};

struct SymmetricHPolytope {
    Mat normals;  // m x d, rows a_i
    Vec offsets;  // m positive reals b_i; K = { x : |<a_i, x>| <= b_i }
};

class Body;

// Linear image of a base body kept implicitly: x in K' iff T^-1 x in K.
// Used for cross-polytopes under general maps, where an explicit facet
// description would have 2^d facets.
struct Pullback {
    std::shared_ptr<const Body> inner;
    Mat transform;      // T
    Mat inv_transform;  // T^-1
};

struct VolumeEstimate {
    double value;
    double std_error;  // 0 for closed forms
};

class Body {
public:
    using Variant = std::variant<Ellipsoid, Box, CrossPolytope, SymmetricHPolytope, Pullback>;

    explicit Body(Variant v);

    static Body ellipsoid(Mat shape);
    static Body ball(int d, double radius);
    static Body box(Vec half_widths);
    static Body cross_polytope(Vec scales);
    static Body hpolytope(Mat normals, Vec offsets);

    int dim() const { return dim_; }
    const Variant& variant() const { return v_; }

    bool contains(const Vec& x) const;
    double circumradius() const;
    VolumeEstimate volume(Rng& rng) const;

    // Vertex set, when the family has one we can enumerate exactly
    // (Box, CrossPolytope, SymmetricHPolytope with d <= 4, pullbacks thereof).
    std::optional<std::vector<Vec>> vertices() const;

    Body transformed(const Mat& t) const;

private:
    Variant v_;
    int dim_;
};

Body apply_transform(const Body& body, const Mat& t);

// Minimum-volume origin-centered ellipsoid containing {+-p} for the given
// points, by Khachiyan coordinate ascent. Every input point x satisfies
// x^T A x <= 1 + eps at return.
Ellipsoid mvee(const std::vector<Vec>& points, double eps);

struct JohnResult {
    Mat transform;  // |det| = 1
    Body transformed_body;
    double circumradius_after;
};

// Determinant-1 map sending the body's minimum-volume enclosing ellipsoid to
// a ball, giving circumradius_after <= 1.1 * d * vol^{1/d}.
// Throws Error("john unsupported") for families without exact vertices
// (SymmetricHPolytope in d > 4); callers may proceed without normalization.
JohnResult john_normalize(const Body& body, Rng& rng);

}  // namespace latslice
