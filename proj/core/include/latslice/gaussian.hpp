#pragma once

#include <vector>

#include "latslice/enumerate.hpp"
#include "latslice/lattice.hpp"
#include "latslice/rng.hpp"

namespace latslice {

// Width parameter of the Gaussian mass function exp(-pi ||x||^2 / s^2).
struct GaussianParam {
    double s;
    explicit GaussianParam(double s_) : s(s_) {
        if (!(s > 0) || !std::isfinite(s))
            throw Error("invalid input", "gaussian width must be positive and finite");
    }
};

double rho(const Vec& x, GaussianParam s);

struct ThetaResult {
    double value;
    double truncation_radius;
    std::size_t terms_used;
    double tail_bound;
};

// Total Gaussian mass of the lattice, truncated once the shell contribution
// is below 1e-14 of the running value for two consecutive radius doublings.
// Shells whose analytic bound is already negligible are not enumerated.
ThetaResult theta(const Lattice& lat, GaussianParam s);

// Gaussian mass of the coset lattice + shift, same truncation policy.
double shifted_theta(const Lattice& lat, const Vec& shift, GaussianParam s);

// |lhs - rhs| / lhs for the identity rho_s(L) = det(L)^-1 s^d rho_{1/s}(L*),
// with both sides computed independently.
double poisson_check(const Lattice& lat, GaussianParam s);

// Probability that a sample from D_{L,s} is the zero vector: 1 / theta.
double prob_zero(const Lattice& lat, GaussianParam s);

// One-dimensional theta of Z at width t, summed directly to machine precision.
double theta_z(double t);

struct OrthProbBound {
    double exact;        // rho_{s ||x||}(Z)^-1
    double closed_form;  // min(1, 1/(s ||x||)), constant-free
};
OrthProbBound orth_prob_lower_bound(double x_norm, GaussianParam s);

// Exact discrete Gaussian sampler: enumerates the support out to the theta
// truncation radius (missing mass <= 1e-12) and inverts the CDF.
class ExactSampler {
public:
    ExactSampler(const Lattice& lat, GaussianParam s);

    const IntVec& sample_coeffs(Rng& rng) const;
    Vec sample(Rng& rng, const Lattice& lat) const;

    std::size_t support_size() const { return coeffs_.size(); }
    const std::vector<IntVec>& support() const { return coeffs_; }
    double mass(std::size_t i) const;

private:
    std::vector<IntVec> coeffs_;
    std::vector<double> cdf_;
    double total_;
};

// Klein's randomized nearest-plane sampler: backward recursion over the
// Gram-Schmidt coordinates, one integer Gaussian per level. In regime when
// s >= max ||b~_i||; below that it refuses and points at the exact sampler.
class KleinSampler {
public:
    KleinSampler(const Lattice& lat, GaussianParam s);

    IntVec sample_coeffs(Rng& rng) const;
    Vec sample(Rng& rng) const;

private:
    const Lattice lat_;
    double s_;
};

// Integer sampled from the discrete Gaussian on Z with the given center and
// width, by CDF inversion over [center - 12s, center + 12s].
std::int64_t sample_z(double center, double s, Rng& rng);

}  // namespace latslice
