#include "latslice/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace latslice {
namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw Error("integer overflow", "entry growth in integer elimination");
    return static_cast<std::int64_t>(v);
}

// Row echelon form over Z by fraction-free elimination with gcd reduction.
// Returns rows sorted by pivot column.
struct Echelon {
    std::vector<IntVec> rows;
    std::vector<int> pivot_cols;
};

Echelon integer_echelon(const std::vector<IntVec>& input, int d) {
    Echelon e;
    for (const IntVec& r0 : input) {
        if (r0.size() != d)
            throw Error("dimension mismatch", "coefficient vector of wrong length");
        std::vector<i128> row(d);
        for (int j = 0; j < d; ++j) row[j] = r0[j];
        for (std::size_t k = 0; k < e.rows.size(); ++k) {
            int pc = e.pivot_cols[k];
            if (row[pc] == 0) continue;
            i128 p = e.rows[k][pc];
            i128 q = row[pc];
            for (int j = 0; j < d; ++j) row[j] = row[j] * p - i128(e.rows[k][j]) * q;
        }
        int lead = -1;
        for (int j = 0; j < d; ++j)
            if (row[j] != 0) { lead = j; break; }
        if (lead < 0) continue;
        // Reduce by gcd and normalize sign of the pivot.
        i128 g = 0;
        for (int j = 0; j < d; ++j) {
            i128 a = row[j] < 0 ? -row[j] : row[j];
            g = g == 0 ? a : std::gcd(static_cast<unsigned long long>(g),
                                      static_cast<unsigned long long>(a));
        }
        IntVec rr(d);
        i128 sign = row[lead] < 0 ? -1 : 1;
        for (int j = 0; j < d; ++j) rr[j] = checked_narrow(sign * row[j] / g);
        auto it = std::upper_bound(e.pivot_cols.begin(), e.pivot_cols.end(), lead);
        std::size_t pos = static_cast<std::size_t>(it - e.pivot_cols.begin());
        e.pivot_cols.insert(it, lead);
        e.rows.insert(e.rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(rr));
    }
    return e;
}

struct Frac {
    std::int64_t num = 0, den = 1;
    void reduce() {
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = gcd64(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
};

Frac frac_sub_mul(Frac acc, std::int64_t a, Frac x) {
    // acc - a*x
    i128 num = i128(acc.num) * x.den - i128(a) * x.num * acc.den;
    i128 den = i128(acc.den) * x.den;
    Frac r{checked_narrow(num), checked_narrow(den)};
    r.reduce();
    return r;
}

}  // namespace

GramSchmidt gram_schmidt(const Mat& basis) {
    if (basis.rows() != basis.cols())
        throw Error("dimension mismatch", "basis must be square");
    if (!all_finite(basis)) throw Error("invalid input", "non-finite basis entry");
    const int d = static_cast<int>(basis.rows());
    GramSchmidt gs;
    gs.orthogonalized = Mat::Zero(d, d);
    gs.norms = Vec::Zero(d);
    gs.mu = Mat::Zero(d, d);
    const double scale = basis.norm();
    for (int i = 0; i < d; ++i) {
        Vec v = basis.row(i).transpose();
        for (int j = 0; j < i; ++j) {
            double n2 = gs.norms[j] * gs.norms[j];
            double m = basis.row(i).dot(gs.orthogonalized.row(j)) / n2;
            gs.mu(i, j) = m;
            v -= m * gs.orthogonalized.row(j).transpose();
        }
        double n = v.norm();
        if (!(n > 1e-12 * scale))
            throw Error("singular basis", "rank-deficient basis in gram_schmidt");
        gs.orthogonalized.row(i) = v.transpose();
        gs.norms[i] = n;
        gs.mu(i, i) = 1.0;
    }
    return gs;
}

Lattice::Lattice(Mat basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
        throw Error("invalid input", "basis must be square and nonempty");
    if (!all_finite(basis_)) throw Error("invalid input", "non-finite basis entry");
    Eigen::JacobiSVD<Mat> svd(basis_);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0) || smax / smin > 1e8)
        throw Error("ill-conditioned basis", "condition number exceeds 1e8 or singular");
    gs_ = gram_schmidt(basis_);
    det_abs_ = svd.singularValues().prod();
}

Lattice Lattice::integer(int d) { return Lattice(Mat::Identity(d, d)); }

Lattice Lattice::dual() const {
    return Lattice(basis_.inverse().transpose());
}

Vec Lattice::point(const IntVec& coeffs) const {
    if (coeffs.size() != basis_.rows())
        throw Error("dimension mismatch", "coefficient vector of wrong length");
    Vec x = Vec::Zero(basis_.cols());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        x += static_cast<double>(coeffs[i]) * basis_.row(i).transpose();
    return x;
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
    if (a.dim() != b.dim())
        throw Error("dimension mismatch", "lattices of different dimension");
    Mat u = b.basis() * a.basis().inverse();
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j)
            if (std::abs(u(i, j) - std::round(u(i, j))) > 1e-7) return false;
    return std::abs(std::abs(u.determinant()) - 1.0) <= 1e-7;
}

int integer_rank(const std::vector<IntVec>& rows, int d) {
    return static_cast<int>(integer_echelon(rows, d).rows.size());
}

std::optional<IntVec> integer_kernel_vector(const std::vector<IntVec>& rows, int d) {
    Echelon e = integer_echelon(rows, d);
    const int rank = static_cast<int>(e.rows.size());
    if (rank >= d) return std::nullopt;
    // Smallest non-pivot column becomes the free variable.
    std::vector<bool> is_pivot(d, false);
    for (int pc : e.pivot_cols) is_pivot[pc] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<Frac> x(d);
    x[free_col] = Frac{1, 1};
    for (int k = rank - 1; k >= 0; --k) {
        int pc = e.pivot_cols[k];
        Frac acc{0, 1};
        for (int j = pc + 1; j < d; ++j)
            if (e.rows[k][j] != 0) acc = frac_sub_mul(acc, e.rows[k][j], x[j]);
        // x_pc = acc / pivot
        i128 num = acc.num;
        i128 den = i128(acc.den) * e.rows[k][pc];
        Frac f{checked_narrow(num), checked_narrow(den)};
        f.reduce();
        x[pc] = f;
    }
    std::int64_t lcm = 1;
    for (int j = 0; j < d; ++j)
        lcm = checked_narrow(i128(lcm) / gcd64(lcm, x[j].den) * x[j].den);
    IntVec m(d);
    for (int j = 0; j < d; ++j)
        m[j] = checked_narrow(i128(x[j].num) * (lcm / x[j].den));
    return primitive_form(m);
}

std::optional<IntegerNormal> integer_normal_of_span(const Lattice& lat,
                                                    const std::vector<IntVec>& coeffs) {
    const int d = lat.dim();
    auto m = integer_kernel_vector(coeffs, d);
    if (!m) return std::nullopt;
    IntegerNormal n;
    n.dual_coeffs = *m;
    n.ambient = lat.dual().point(n.dual_coeffs);
    return n;
}

}  // namespace latslice
