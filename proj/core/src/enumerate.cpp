#include "latslice/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace latslice {
namespace {

struct BallEnum {
    const Lattice& lat;
    const std::function<void(const IntVec&, double)>& fn;
    double radius2;
    std::size_t budget;
    std::size_t emitted = 0;
    int d;
    Vec tc;  // center coordinates in the Gram-Schmidt frame
    IntVec coeffs;

    void run() {
        descend(d - 1, radius2);
    }

    void descend(int level, double rem) {
        const double gsn = lat.gs_norms()[level];
        const double gsn2 = gsn * gsn;
        double y = tc[level];
        for (int i = level + 1; i < d; ++i)
            y -= static_cast<double>(coeffs[i]) * lat.gs_mu()(i, level);
        const double w = std::sqrt(std::max(rem, 0.0)) / gsn;
        const auto lo = static_cast<std::int64_t>(std::ceil(y - w - 1e-12));
        const auto hi = static_cast<std::int64_t>(std::floor(y + w + 1e-12));
        for (std::int64_t c = lo; c <= hi; ++c) {
            const double diff = static_cast<double>(c) - y;
            const double used = diff * diff * gsn2;
            if (used > rem + 1e-12) continue;
            coeffs[level] = c;
            if (level == 0) {
                if (++emitted > budget)
                    throw Error("enumeration too expensive", "point budget exceeded");
                fn(coeffs, radius2 - rem + used);
            } else {
                descend(level - 1, rem - used);
            }
        }
        coeffs[level] = 0;
    }
};

void sort_canonical(PointSet& ps) {
    std::vector<std::size_t> order(ps.coeffs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(ps.coeffs[a], ps.coeffs[b]);
    });
    std::vector<IntVec> cs;
    std::vector<Vec> xs;
    cs.reserve(order.size());
    xs.reserve(order.size());
    for (std::size_t i : order) {
        cs.push_back(ps.coeffs[i]);
        xs.push_back(ps.points[i]);
    }
    ps.coeffs = std::move(cs);
    ps.points = std::move(xs);
}

void finalize(PointSet& ps) {
    sort_canonical(ps);
    ps.contains_zero = false;
    for (const IntVec& c : ps.coeffs)
        if (c.isZero()) { ps.contains_zero = true; break; }
}

}  // namespace

void for_each_point_in_ball(const Lattice& lat, const Vec& center, double radius,
                            const std::function<void(const IntVec&, double)>& fn,
                            std::size_t budget) {
    if (center.size() != lat.dim())
        throw Error("dimension mismatch", "center of wrong dimension");
    if (!(radius >= 0) || !std::isfinite(radius))
        throw Error("invalid input", "radius must be finite and nonnegative");
    const int d = lat.dim();
    BallEnum e{lat, fn, radius * radius, budget, 0, d, Vec(d), IntVec::Zero(d)};
    for (int j = 0; j < d; ++j) {
        double n2 = lat.gs_norms()[j] * lat.gs_norms()[j];
        e.tc[j] = center.dot(lat.gs_basis().row(j)) / n2;
    }
    e.run();
}

PointSet enumerate_in_body(const Lattice& lat, const Body& body) {
    if (lat.dim() != body.dim())
        throw Error("dimension mismatch", "lattice and body dimensions differ");
    const int d = lat.dim();
    const double r = body.circumradius();
    if (!std::isfinite(r)) throw Error("unbounded body", "infinite circumradius");
    const double est = unit_ball_volume(d) * std::pow(r + 1, d) / lat.det_abs() * 16;
    if (est > 1e8)
        throw Error("enumeration too expensive", "estimated point count exceeds budget");
    PointSet ps;
    ps.dim = d;
    for_each_point_in_ball(lat, Vec::Zero(d), r * (1 + 1e-12) + 1e-12,
                           [&](const IntVec& c, double) {
                               Vec x = lat.point(c);
                               if (body.contains(x)) {
                                   ps.coeffs.push_back(c);
                                   ps.points.push_back(std::move(x));
                               }
                           });
    finalize(ps);
    return ps;
}

PointSet grid_scan_oracle(const Lattice& lat, const Body& body) {
    if (lat.dim() != body.dim())
        throw Error("dimension mismatch", "lattice and body dimensions differ");
    const int d = lat.dim();
    const double r = body.circumradius();
    Lattice dual = lat.dual();
    std::vector<std::int64_t> bound(d);
    double box_size = 1;
    for (int i = 0; i < d; ++i) {
        bound[i] = static_cast<std::int64_t>(std::floor(r * dual.basis().row(i).norm() + 1e-9));
        box_size *= static_cast<double>(2 * bound[i] + 1);
    }
    if (box_size > 1e7)
        throw Error("enumeration too expensive", "coefficient box exceeds budget");
    PointSet ps;
    ps.dim = d;
    IntVec c = IntVec::Zero(d);
    std::function<void(int)> scan = [&](int level) {
        if (level == d) {
            Vec x = lat.point(c);
            if (body.contains(x)) {
                ps.coeffs.push_back(c);
                ps.points.push_back(std::move(x));
            }
            return;
        }
        for (std::int64_t v = -bound[level]; v <= bound[level]; ++v) {
            c[level] = v;
            scan(level + 1);
        }
        c[level] = 0;
    };
    scan(0);
    finalize(ps);
    return ps;
}

SliceCount slice_count(const PointSet& ps, const IntVec& dual_coeffs) {
    if (dual_coeffs.isZero()) throw Error("invalid input", "zero hyperplane normal");
    SliceCount sc;
    sc.total = static_cast<long long>(ps.size());
    for (const IntVec& c : ps.coeffs) {
        std::int64_t dot = 0;
        for (Eigen::Index i = 0; i < c.size(); ++i) dot += c[i] * dual_coeffs[i];
        if (dot == 0) ++sc.on_hyperplane;
    }
    return sc;
}

SliceCount slice_count(const PointSet& ps, const Vec& y) {
    if (y.norm() == 0) throw Error("invalid input", "zero hyperplane normal");
    SliceCount sc;
    sc.total = static_cast<long long>(ps.size());
    for (const Vec& x : ps.points) {
        if (x.norm() == 0 || std::abs(x.dot(y)) <= 1e-9 * x.norm() * y.norm())
            ++sc.on_hyperplane;
    }
    return sc;
}

std::string point_set_csv(const PointSet& ps) {
    std::ostringstream out;
    const int d = ps.dim;
    for (int i = 0; i < d; ++i) out << "c" << i << ",";
    for (int i = 0; i < d; ++i) out << "x" << i << (i + 1 < d ? "," : "\n");
    char buf[64];
    for (std::size_t k = 0; k < ps.size(); ++k) {
        for (int i = 0; i < d; ++i) out << ps.coeffs[k][i] << ",";
        for (int i = 0; i < d; ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", ps.points[k][i]);
            out << buf << (i + 1 < d ? "," : "\n");
        }
    }
    return out.str();
}

}  // namespace latslice
