#include "latslice/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace latslice {
namespace {

constexpr double kShellRelTol = 1e-14;
constexpr std::size_t kTermBudget = 100'000'000;

double gaussian_weight(double dist2, double s) {
    return std::exp(-M_PI * dist2 / (s * s));
}

// Crude upper bound on the number of lattice points in a ball of radius r.
double point_count_bound(const Lattice& lat, double r) {
    const int d = lat.dim();
    double diag = 0;
    for (int i = 0; i < d; ++i) diag += lat.gs_norms()[i] * lat.gs_norms()[i];
    // Every point owns a fundamental cell within distance half the cell diagonal.
    double rr = r + std::sqrt(diag);
    return unit_ball_volume(d) * std::pow(rr, d) / lat.det_abs() + 1;
}

// Upper bound on the Gaussian mass outside radius r: every shell
// [2^k r, 2^(k+1) r) is bounded by count * weight at its inner radius.
double shell_mass_bound(const Lattice& lat, double r, double s) {
    double total = 0;
    double rr = r;
    for (int k = 0; k < 64; ++k) {
        double term = point_count_bound(lat, 2 * rr) * gaussian_weight(rr * rr, s);
        total += term;
        if (term < 1e-300) break;
        rr *= 2;
    }
    return total;
}

struct BallSum {
    double value = 0;
    std::size_t terms = 0;
};

BallSum sum_ball(const Lattice& lat, const Vec& center, double r, double s,
                 std::size_t budget) {
    BallSum out;
    try {
        for_each_point_in_ball(lat, center, r,
                               [&](const IntVec&, double dist2) {
                                   out.value += gaussian_weight(dist2, s);
                                   ++out.terms;
                               },
                               budget);
    } catch (const Error& e) {
        if (e.code() == "enumeration too expensive")
            throw Error("theta too expensive",
                        "term budget exceeded; s too large relative to det");
        throw;
    }
    return out;
}

ThetaResult theta_at_center(const Lattice& lat, const Vec& center, GaussianParam s) {
    const int d = lat.dim();
    double r = 3.0 * s.s * std::sqrt(static_cast<double>(d));
    BallSum cur = sum_ball(lat, center, r, s.s, kTermBudget);
    ThetaResult res{cur.value, r, cur.terms, 0.0};
    int quiet = 0;
    while (quiet < 2) {
        // Shell (r, 2r]: skip enumeration when its analytic bound is already
        // negligible relative to the accumulated value.
        double bound = shell_mass_bound(lat, r, s.s);
        if (res.value > 0 && bound < kShellRelTol * res.value) {
            ++quiet;
            res.tail_bound = bound;
            r *= 2;
            res.truncation_radius = r;
            continue;
        }
        r *= 2;
        std::size_t left = kTermBudget > res.terms_used ? kTermBudget - res.terms_used : 0;
        if (left == 0) throw Error("theta too expensive", "term budget exceeded");
        BallSum next = sum_ball(lat, center, r, s.s, left);
        double shell = next.value - res.value;
        res.terms_used += next.terms;
        res.value = next.value;
        res.truncation_radius = r;
        if (res.value > 0 && shell < kShellRelTol * res.value) {
            ++quiet;
            res.tail_bound = shell;
        } else {
            quiet = 0;
        }
    }
    return res;
}

}  // namespace

double rho(const Vec& x, GaussianParam s) {
    if (!all_finite(x)) throw Error("invalid input", "non-finite point");
    return gaussian_weight(x.squaredNorm(), s.s);
}

ThetaResult theta(const Lattice& lat, GaussianParam s) {
    ThetaResult res = theta_at_center(lat, Vec::Zero(lat.dim()), s);
    // The zero vector contributes 1.
    if (res.value < 1.0) res.value = 1.0;
    return res;
}

double shifted_theta(const Lattice& lat, const Vec& shift, GaussianParam s) {
    if (shift.size() != lat.dim())
        throw Error("dimension mismatch", "shift of wrong dimension");
    return theta_at_center(lat, -shift, s).value;
}

double poisson_check(const Lattice& lat, GaussianParam s) {
    const int d = lat.dim();
    double lhs = theta(lat, s).value;
    double rhs = std::pow(s.s, d) / lat.det_abs() * theta(lat.dual(), GaussianParam(1.0 / s.s)).value;
    return std::abs(lhs - rhs) / lhs;
}

double prob_zero(const Lattice& lat, GaussianParam s) {
    return 1.0 / theta(lat, s).value;
}

double theta_z(double t) {
    if (!(t > 0)) throw Error("invalid input", "width must be positive");
    double sum = 1.0;
    for (std::int64_t n = 1;; ++n) {
        double term = std::exp(-M_PI * static_cast<double>(n) * static_cast<double>(n) / (t * t));
        sum += 2.0 * term;
        if (term < 1e-20 * sum) break;
    }
    return sum;
}

OrthProbBound orth_prob_lower_bound(double x_norm, GaussianParam s) {
    if (!(x_norm > 0)) throw Error("invalid input", "x_norm must be positive");
    double t = s.s * x_norm;
    return {1.0 / theta_z(t), std::min(1.0, 1.0 / t)};
}

ExactSampler::ExactSampler(const Lattice& lat, GaussianParam s) {
    const int d = lat.dim();
    double r = 3.0 * s.s * std::sqrt(static_cast<double>(d));
    // Grow the support radius until the analytic tail bound is <= 1e-12 of
    // the collected mass.
    for (int attempt = 0; attempt < 64; ++attempt) {
        coeffs_.clear();
        cdf_.clear();
        double total = 0;
        try {
            for_each_point_in_ball(lat, Vec::Zero(d), r,
                                   [&](const IntVec& c, double dist2) {
                                       double w = gaussian_weight(dist2, s.s);
                                       total += w;
                                       coeffs_.push_back(c);
                                       cdf_.push_back(total);
                                   },
                                   kTermBudget);
        } catch (const Error& e) {
            if (e.code() == "enumeration too expensive")
                throw Error("theta too expensive", "sampler support exceeds budget");
            throw;
        }
        if (total > 0 && shell_mass_bound(lat, r, s.s) <= 1e-12 * total) {
            total_ = total;
            return;
        }
        r *= 2;
    }
    throw Error("theta too expensive", "sampler support radius did not stabilize");
}

const IntVec& ExactSampler::sample_coeffs(Rng& rng) const {
    double u = rng.uniform() * total_;
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    return coeffs_[i];
}

Vec ExactSampler::sample(Rng& rng, const Lattice& lat) const {
    return lat.point(sample_coeffs(rng));
}

double ExactSampler::mass(std::size_t i) const {
    double prev = i == 0 ? 0.0 : cdf_[i - 1];
    return (cdf_[i] - prev) / total_;
}

KleinSampler::KleinSampler(const Lattice& lat, GaussianParam s) : lat_(lat), s_(s.s) {
    if (s.s < lat.gs_norms().maxCoeff())
        throw Error("klein out of regime",
                    "s below max Gram-Schmidt norm; use the exact sampler");
}

IntVec KleinSampler::sample_coeffs(Rng& rng) const {
    const int d = lat_.dim();
    IntVec c = IntVec::Zero(d);
    for (int j = d - 1; j >= 0; --j) {
        double center = 0;
        for (int i = j + 1; i < d; ++i)
            center -= static_cast<double>(c[i]) * lat_.gs_mu()(i, j);
        c[j] = sample_z(center, s_ / lat_.gs_norms()[j], rng);
    }
    return c;
}

Vec KleinSampler::sample(Rng& rng) const { return lat_.point(sample_coeffs(rng)); }

std::int64_t sample_z(double center, double s, Rng& rng) {
    const auto lo = static_cast<std::int64_t>(std::ceil(center - 12 * s - 1));
    const auto hi = static_cast<std::int64_t>(std::floor(center + 12 * s + 1));
    double total = 0;
    for (std::int64_t k = lo; k <= hi; ++k) {
        double diff = static_cast<double>(k) - center;
        total += std::exp(-M_PI * diff * diff / (s * s));
    }
    double u = rng.uniform() * total;
    double acc = 0;
    for (std::int64_t k = lo; k <= hi; ++k) {
        double diff = static_cast<double>(k) - center;
        acc += std::exp(-M_PI * diff * diff / (s * s));
        if (u <= acc) return k;
    }
    return hi;
}

}  // namespace latslice
