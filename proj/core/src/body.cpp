#include "latslice/body.hpp"

#include <algorithm>
#include <cmath>

namespace latslice {
namespace {

constexpr double kBoundaryTol = 1e-12;

bool is_diagonal(const Mat& t) {
    for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            if (i != j && std::abs(t(i, j)) > 1e-14 * (1.0 + t.norm())) return false;
    return true;
}

Mat spd_sqrt(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.eigenvalues().minCoeff() <= 0)
        throw Error("invalid input", "shape matrix not positive definite");
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

Mat inverted(const Mat& t) {
    Eigen::FullPivLU<Mat> lu(t);
    if (!lu.isInvertible()) throw Error("singular transform", "transform not invertible");
    return lu.inverse();
}

double spectral_norm(const Mat& m) {
    return Eigen::JacobiSVD<Mat>(m).singularValues().maxCoeff();
}

// Vertices of { x : |<a_i,x>| <= b_i }: solutions of d active constraints
// that satisfy the rest. Exact for small d; callers gate on d <= 4.
std::vector<Vec> hpoly_vertices(const SymmetricHPolytope& h) {
    const int d = static_cast<int>(h.normals.cols());
    const int m = static_cast<int>(h.normals.rows());
    std::vector<int> idx(d);
    std::vector<Vec> out;
    auto feasible = [&](const Vec& x) {
        for (int i = 0; i < m; ++i)
            if (std::abs(h.normals.row(i).dot(x)) > h.offsets[i] * (1 + 1e-9) + 1e-12)
                return false;
        return true;
    };
    auto push_unique = [&](const Vec& x) {
        for (const Vec& y : out)
            if ((x - y).norm() < 1e-9 * (1 + x.norm())) return;
        out.push_back(x);
    };
    // Iterate over d-subsets of rows and sign patterns with first sign fixed;
    // mirror images are added explicitly.
    std::vector<int> comb(d);
    for (int i = 0; i < d; ++i) comb[i] = i;
    auto next_comb = [&]() {
        int i = d - 1;
        while (i >= 0 && comb[i] == m - d + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    if (m < d) return out;
    do {
        Mat s(d, d);
        for (int i = 0; i < d; ++i) s.row(i) = h.normals.row(comb[i]);
        Eigen::FullPivLU<Mat> lu(s);
        if (!lu.isInvertible()) continue;
        for (unsigned signs = 0; signs < (1u << (d - 1)); ++signs) {
            Vec rhs(d);
            rhs[0] = h.offsets[comb[0]];
            for (int i = 1; i < d; ++i)
                rhs[i] = (signs >> (i - 1)) & 1 ? -h.offsets[comb[i]] : h.offsets[comb[i]];
            Vec x = lu.solve(rhs);
            if (feasible(x)) {
                push_unique(x);
                push_unique(-x);
            }
        }
    } while (next_comb());
    return out;
}

// Upper bound on the circumradius from d-row subsets: for any x in K and
// subset S of constraint normals, ||x|| <= ||S^-1||_2 * ||b_S||_2.
double hpoly_circumradius_bound(const SymmetricHPolytope& h) {
    const int d = static_cast<int>(h.normals.cols());
    const int m = static_cast<int>(h.normals.rows());
    Rng rng(0x5eed0001);
    double best = std::numeric_limits<double>::infinity();
    auto try_subset = [&](const std::vector<int>& comb) {
        Mat s(d, d);
        Vec b(d);
        for (int i = 0; i < d; ++i) {
            s.row(i) = h.normals.row(comb[i]);
            b[i] = h.offsets[comb[i]];
        }
        Eigen::JacobiSVD<Mat> svd(s);
        double smin = svd.singularValues().minCoeff();
        if (smin > 1e-10) best = std::min(best, b.norm() / smin);
    };
    double log_count = 0;
    for (int i = 0; i < d; ++i) log_count += std::log((m - i) / double(i + 1));
    if (log_count < std::log(5000.0)) {
        std::vector<int> comb(d);
        for (int i = 0; i < d; ++i) comb[i] = i;
        while (true) {
            try_subset(comb);
            int i = d - 1;
            while (i >= 0 && comb[i] == m - d + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        }
    } else {
        for (int trial = 0; trial < 5000; ++trial) {
            std::vector<int> comb;
            while (static_cast<int>(comb.size()) < d) {
                int c = static_cast<int>(rng.below(m));
                if (std::find(comb.begin(), comb.end(), c) == comb.end()) comb.push_back(c);
            }
            try_subset(comb);
        }
    }
    if (!std::isfinite(best))
        throw Error("unbounded body", "could not certify a circumradius bound");
    return best;
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Body::Body(Variant v) : v_(std::move(v)) {
    if (auto* e = std::get_if<Ellipsoid>(&v_)) {
        dim_ = static_cast<int>(e->shape.rows());
        if (e->shape.rows() != e->shape.cols() || !all_finite(e->shape))
            throw Error("invalid input", "ellipsoid shape must be square and finite");
        if ((e->shape - e->shape.transpose()).norm() > 1e-9 * (1 + e->shape.norm()))
            throw Error("invalid input", "ellipsoid shape must be symmetric");
        (void)spd_sqrt(e->shape);  // positive definiteness check
    } else if (auto* b = std::get_if<Box>(&v_)) {
        dim_ = static_cast<int>(b->half_widths.size());
        if (!all_finite(b->half_widths) || (b->half_widths.array() <= 0).any())
            throw Error("invalid input", "box half-widths must be positive");
    } else if (auto* c = std::get_if<CrossPolytope>(&v_)) {
        dim_ = static_cast<int>(c->scales.size());
        if (!all_finite(c->scales) || (c->scales.array() <= 0).any())
            throw Error("invalid input", "cross-polytope scales must be positive");
    } else if (auto* h = std::get_if<SymmetricHPolytope>(&v_)) {
        dim_ = static_cast<int>(h->normals.cols());
        if (h->offsets.size() != h->normals.rows() || !all_finite(h->normals) ||
            !all_finite(h->offsets) || (h->offsets.array() <= 0).any())
            throw Error("invalid input", "h-polytope offsets must be positive, one per normal");
        Eigen::JacobiSVD<Mat> svd(h->normals);
        if (svd.rank() < dim_ || svd.singularValues().minCoeff() <= 1e-12)
            throw Error("unbounded body", "h-polytope normals must span R^d");
    } else {
        auto& p = std::get<Pullback>(v_);
        dim_ = p.inner->dim();
    }
    if (dim_ < 1) throw Error("invalid input", "empty body");
}

Body Body::ellipsoid(Mat shape) { return Body(Ellipsoid{std::move(shape)}); }
Body Body::ball(int d, double radius) {
    return Body(Ellipsoid{Mat::Identity(d, d) / (radius * radius)});
}
Body Body::box(Vec hw) { return Body(Box{std::move(hw)}); }
Body Body::cross_polytope(Vec s) { return Body(CrossPolytope{std::move(s)}); }
Body Body::hpolytope(Mat n, Vec b) {
    return Body(SymmetricHPolytope{std::move(n), std::move(b)});
}

bool Body::contains(const Vec& x) const {
    if (x.size() != dim_) throw Error("dimension mismatch", "point of wrong dimension");
    if (auto* e = std::get_if<Ellipsoid>(&v_))
        return x.dot(e->shape * x) <= 1.0 + kBoundaryTol;
    if (auto* b = std::get_if<Box>(&v_)) {
        for (int i = 0; i < dim_; ++i)
            if (std::abs(x[i]) > b->half_widths[i] + kBoundaryTol * (1 + b->half_widths[i]))
                return false;
        return true;
    }
    if (auto* c = std::get_if<CrossPolytope>(&v_))
        return (x.cwiseAbs().cwiseQuotient(c->scales)).sum() <= 1.0 + kBoundaryTol;
    if (auto* h = std::get_if<SymmetricHPolytope>(&v_)) {
        for (Eigen::Index i = 0; i < h->normals.rows(); ++i)
            if (std::abs(h->normals.row(i).dot(x)) >
                h->offsets[i] + kBoundaryTol * (1 + h->offsets[i]))
                return false;
        return true;
    }
    auto& p = std::get<Pullback>(v_);
    return p.inner->contains(p.inv_transform * x);
}

double Body::circumradius() const {
    if (auto* e = std::get_if<Ellipsoid>(&v_)) {
        Eigen::SelfAdjointEigenSolver<Mat> es(e->shape);
        return 1.0 / std::sqrt(es.eigenvalues().minCoeff());
    }
    if (auto* b = std::get_if<Box>(&v_)) return b->half_widths.norm();
    if (auto* c = std::get_if<CrossPolytope>(&v_)) return c->scales.maxCoeff();
    if (auto* h = std::get_if<SymmetricHPolytope>(&v_)) {
        if (dim_ <= 4) {
            double r = 0;
            for (const Vec& v : hpoly_vertices(*h)) r = std::max(r, v.norm());
            return r;
        }
        return hpoly_circumradius_bound(*h);
    }
    auto& p = std::get<Pullback>(v_);
    if (auto vs = vertices()) {
        double r = 0;
        for (const Vec& v : *vs) r = std::max(r, v.norm());
        return r;
    }
    return spectral_norm(p.transform) * p.inner->circumradius();
}

std::optional<std::vector<Vec>> Body::vertices() const {
    if (auto* b = std::get_if<Box>(&v_)) {
        std::vector<Vec> out;
        for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
            Vec v(dim_);
            for (int i = 0; i < dim_; ++i)
                v[i] = (mask >> i) & 1 ? -b->half_widths[i] : b->half_widths[i];
            out.push_back(v);
        }
        return out;
    }
    if (auto* c = std::get_if<CrossPolytope>(&v_)) {
        std::vector<Vec> out;
        for (int i = 0; i < dim_; ++i) {
            Vec v = Vec::Zero(dim_);
            v[i] = c->scales[i];
            out.push_back(v);
            out.push_back(-v);
        }
        return out;
    }
    if (auto* h = std::get_if<SymmetricHPolytope>(&v_)) {
        if (dim_ > 4) return std::nullopt;
        return hpoly_vertices(*h);
    }
    if (auto* p = std::get_if<Pullback>(&v_)) {
        auto inner = p->inner->vertices();
        if (!inner) return std::nullopt;
        for (Vec& v : *inner) v = p->transform * v;
        return inner;
    }
    return std::nullopt;
}

VolumeEstimate Body::volume(Rng& rng) const {
    if (auto* e = std::get_if<Ellipsoid>(&v_)) {
        double det = e->shape.determinant();
        return {unit_ball_volume(dim_) / std::sqrt(det), 0.0};
    }
    if (auto* b = std::get_if<Box>(&v_))
        return {(2.0 * b->half_widths.array()).prod(), 0.0};
    if (auto* c = std::get_if<CrossPolytope>(&v_))
        return {std::pow(2.0, dim_) / factorial(dim_) * c->scales.prod(), 0.0};
    if (auto* p = std::get_if<Pullback>(&v_)) {
        VolumeEstimate inner = p->inner->volume(rng);
        double j = std::abs(p->transform.determinant());
        return {inner.value * j, inner.std_error * j};
    }
    // Monte Carlo rejection inside the bounding box [-R, R]^d.
    const double r = circumradius();
    const double box_vol = std::pow(2.0 * r, dim_);
    std::size_t n = 0, hits = 0;
    Vec x(dim_);
    while (true) {
        for (std::size_t batch = 0; batch < 65536; ++batch) {
            for (int i = 0; i < dim_; ++i) x[i] = rng.uniform(-r, r);
            if (contains(x)) ++hits;
            ++n;
        }
        double p_hat = static_cast<double>(hits) / static_cast<double>(n);
        if (hits >= 16) {
            double se = box_vol * std::sqrt(p_hat * (1 - p_hat) / static_cast<double>(n));
            double value = box_vol * p_hat;
            if (se <= 0.01 * value || n >= 20'000'000) return {value, se};
        } else if (n >= 20'000'000) {
            throw Error("volume failed", "no Monte Carlo hits; body too thin for rejection");
        }
    }
}

Body apply_transform(const Body& body, const Mat& t) {
    if (t.rows() != body.dim() || t.cols() != body.dim())
        throw Error("dimension mismatch", "transform of wrong dimension");
    Mat tinv = inverted(t);
    const auto& v = body.variant();
    if (auto* e = std::get_if<Ellipsoid>(&v))
        return Body::ellipsoid(tinv.transpose() * e->shape * tinv);
    if (auto* b = std::get_if<Box>(&v)) {
        if (is_diagonal(t)) {
            Vec hw = b->half_widths;
            for (Eigen::Index i = 0; i < hw.size(); ++i) hw[i] *= std::abs(t(i, i));
            return Body::box(hw);
        }
        // Facet |x_i| <= h_i pulls back to |<row_i(T^-1), x>| <= h_i.
        return Body::hpolytope(tinv, b->half_widths);
    }
    if (auto* c = std::get_if<CrossPolytope>(&v)) {
        if (is_diagonal(t)) {
            Vec s = c->scales;
            for (Eigen::Index i = 0; i < s.size(); ++i) s[i] *= std::abs(t(i, i));
            return Body::cross_polytope(s);
        }
        return Body(Pullback{std::make_shared<Body>(body), t, tinv});
    }
    if (auto* h = std::get_if<SymmetricHPolytope>(&v))
        return Body::hpolytope(h->normals * tinv, h->offsets);
    auto& p = std::get<Pullback>(v);
    return Body(Pullback{p.inner, t * p.transform, p.inv_transform * tinv});
}

Body Body::transformed(const Mat& t) const { return apply_transform(*this, t); }

Ellipsoid mvee(const std::vector<Vec>& points, double eps) {
    if (points.empty()) throw Error("invalid input", "mvee of empty point set");
    const int d = static_cast<int>(points[0].size());
    const int n = static_cast<int>(points.size());
    Mat gram = Mat::Zero(d, d);
    for (const Vec& x : points) gram += x * x.transpose();
    if (Eigen::FullPivLU<Mat>(gram).rank() < d)
        throw Error("rank-deficient point set", "points do not span R^d");

    // Wolfe-Atwood ascent on the central MVEE dual: maximize log det M(u),
    // M(u) = sum u_i x_i x_i^T, with add and away steps.
    Vec u = Vec::Constant(n, 1.0 / n);
    Mat m = Mat::Zero(d, d);
    for (int i = 0; i < n; ++i) m += u[i] * points[i] * points[i].transpose();
    Mat minv = m.inverse();
    Vec g(n);
    const int max_iters = 200000;
    for (int it = 0; it < max_iters; ++it) {
        for (int i = 0; i < n; ++i) g[i] = points[i].dot(minv * points[i]);
        int jp = 0, jm = -1;
        for (int i = 0; i < n; ++i) {
            if (g[i] > g[jp]) jp = i;
            if (u[i] > 1e-12 && (jm < 0 || g[i] < g[jm])) jm = i;
        }
        double up_gap = g[jp] / d - 1.0;
        double down_gap = 1.0 - g[jm] / d;
        if (up_gap <= eps && down_gap <= eps) break;
        int j;
        double beta;
        if (up_gap >= down_gap) {
            j = jp;
            beta = (g[j] - d) / (d * (g[j] - 1.0));
        } else {
            j = jm;
            beta = std::max((g[j] - d) / (d * (g[j] - 1.0)), -u[j] / (1.0 - u[j]));
        }
        u *= (1.0 - beta);
        u[j] += beta;
        m = (1.0 - beta) * m + beta * points[j] * points[j].transpose();
        minv = m.inverse();
    }
    double gmax = 0;
    for (int i = 0; i < n; ++i) gmax = std::max(gmax, points[i].dot(minv * points[i]));
    // A = M^-1 / g_max contains every input point exactly and is within a
    // (g_max/d)^{d/2} <= (1+eps)^{d/2} volume factor of optimal.
    return Ellipsoid{minv / gmax};
}

JohnResult john_normalize(const Body& body, Rng& rng) {
    const int d = body.dim();
    Mat t;
    if (auto* e = std::get_if<Ellipsoid>(&body.variant())) {
        Mat root = spd_sqrt(e->shape);
        t = root / std::pow(root.determinant(), 1.0 / d);
    } else {
        auto vs = body.vertices();
        if (!vs) throw Error("john unsupported",
                             "no exact vertex description for this body family");
        Ellipsoid mv = mvee(*vs, 1e-7);
        Mat root = spd_sqrt(mv.shape);
        t = root / std::pow(root.determinant(), 1.0 / d);
    }
    JohnResult res{t, apply_transform(body, t), 0.0};
    res.circumradius_after = res.transformed_body.circumradius();
    double vol = body.volume(rng).value;
    if (res.circumradius_after > 1.1 * d * std::pow(vol, 1.0 / d) * (1 + 1e-9))
        throw Error("john invariant violated", "circumradius bound failed after normalization");
    return res;
}

}  // namespace latslice
