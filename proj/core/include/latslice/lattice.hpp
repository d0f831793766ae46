#pragma once

#include <optional>
#include <vector>

#include "latslice/types.hpp"

namespace latslice {

// Classical Gram-Schmidt without normalization. Rows of `basis` are the
// input vectors; rows of the result are pairwise orthogonal.
// Throws Error("singular basis") on (numerically) rank-deficient input.
struct GramSchmidt {
    Mat orthogonalized;   // rows b~_i
    Vec norms;            // ||b~_i||
    Mat mu;               // lower triangular, mu(i,j) = <b_i, b~_j>/||b~_j||^2
};
GramSchmidt gram_schmidt(const Mat& basis);

// Full-rank lattice in R^d. Rows of the basis matrix are the basis vectors;
// a lattice point is basis^T c for an integer coefficient vector c.
// Immutable after construction.
class Lattice {
public:
    explicit Lattice(Mat basis);

    static Lattice integer(int d);  // Z^d

    int dim() const { return static_cast<int>(basis_.rows()); }
    const Mat& basis() const { return basis_; }
    const Mat& gs_basis() const { return gs_.orthogonalized; }
    const Vec& gs_norms() const { return gs_.norms; }
    const Mat& gs_mu() const { return gs_.mu; }
    double det_abs() const { return det_abs_; }

    Lattice dual() const;

    // Ambient point for integer coefficients.
    Vec point(const IntVec& coeffs) const;

private:
    Mat basis_;
    GramSchmidt gs_;
    double det_abs_;
};

// True iff a and b generate the same point set: the change-of-basis matrix
// is integral with determinant +-1, within tolerance 1e-7.
bool lattice_equal(const Lattice& a, const Lattice& b);

// Nonzero integer vector m with m . r = 0 for every row r, or nullopt when
// the rows span Z^d rationally (full rank). Exact integer elimination.
// For an empty row set, returns e_1.
std::optional<IntVec> integer_kernel_vector(const std::vector<IntVec>& rows, int d);

// Rank of the rational span of integer vectors, by exact elimination.
int integer_rank(const std::vector<IntVec>& rows, int d);

// Result of the degenerate-branch normal computation: a dual-lattice vector
// orthogonal to every point of a rank-deficient coefficient set.
struct IntegerNormal {
    IntVec dual_coeffs;  // coordinates w.r.t. the dual basis
    Vec ambient;         // dual_basis^T dual_coeffs
};

// If the integer span of `coeffs` has rank < d, returns a nonzero dual
// vector orthogonal to all corresponding lattice points; otherwise nullopt
// ("full-rank"). Empty input yields the first dual basis vector.
std::optional<IntegerNormal> integer_normal_of_span(const Lattice& lat,
                                                    const std::vector<IntVec>& coeffs);

}  // namespace latslice
