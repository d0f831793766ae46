#pragma once

#include <functional>
#include <vector>

#include "latslice/body.hpp"
#include "latslice/lattice.hpp"

namespace latslice {

// Visits every lattice point x with ||x - center|| <= radius, by Fincke-Pohst
// recursion on the Gram-Schmidt data. The callback receives the integer
// coefficient vector and ||x - center||^2. Deterministic order (coefficients
// descending-level lexicographic). Throws Error("enumeration too expensive")
// when more than `budget` points would be emitted.
void for_each_point_in_ball(const Lattice& lat, const Vec& center, double radius,
                            const std::function<void(const IntVec&, double)>& fn,
                            std::size_t budget = 100'000'000);

// The enumerated set K intersect Lambda, canonically ordered.
struct PointSet {
    std::vector<IntVec> coeffs;  // lattice coordinates, lex sorted
    std::vector<Vec> points;     // ambient coordinates, same order
    bool contains_zero = false;
    int dim = 0;

    std::size_t size() const { return coeffs.size(); }
};

// Exactly the lattice points inside the body: ball enumeration at the
// circumradius followed by the membership filter.
PointSet enumerate_in_body(const Lattice& lat, const Body& body);

// Independent oracle: scan the full integer coefficient box implied by the
// circumradius and the dual basis norms. Test support only.
PointSet grid_scan_oracle(const Lattice& lat, const Body& body);

struct SliceCount {
    long long on_hyperplane = 0;
    long long total = 0;
};

// Count with an exact integer inner product: x with coefficients c lies on
// y-perp iff c . m == 0, where m are y's dual-basis coefficients.
SliceCount slice_count(const PointSet& ps, const IntVec& dual_coeffs);

// Floating-point variant for a general ambient normal.
SliceCount slice_count(const PointSet& ps, const Vec& y);

// CSV export: coefficient coordinates then ambient coordinates, one row per point.
std::string point_set_csv(const PointSet& ps);

}  // namespace latslice
