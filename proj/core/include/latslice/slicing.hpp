#pragma once

#include <optional>
#include <string>

#include "latslice/body.hpp"
#include "latslice/enumerate.hpp"
#include "latslice/gaussian.hpp"
#include "latslice/lattice.hpp"
#include "latslice/rng.hpp"

namespace latslice {

struct FinderConfig {
    double big_C = 2.0;            // width multiplier for the sampling Gaussian
    double small_c = 0.5;          // calibrated constant in the acceptance threshold
    std::size_t max_attempts = 0;  // 0: auto, 10 * ceil(1/p) capped at 1e6
    std::uint64_t seed = 0;

    void validate() const {
        if (!(big_C >= 1)) throw Error("invalid config", "big_C must be >= 1");
        if (!(small_c > 0) || small_c > 1)
            throw Error("invalid config", "small_c must be in (0, 1]");
    }
};

enum class SliceMethod { randomized, exact_oracle, dual_search, degenerate };

std::string to_string(SliceMethod m);

struct SliceResult {
    IntVec normal_coeffs;  // coordinates w.r.t. the dual basis, nonzero
    Vec normal;            // ambient dual-lattice vector
    long long on_count = 0;
    long long total = 0;
    SliceMethod method = SliceMethod::exact_oracle;
    std::size_t attempts = 0;       // randomized only
    bool zero_guard_warned = false; // randomized only: s^-d < p/2 check failed

    double ratio() const { return static_cast<double>(on_count) / static_cast<double>(total); }
};

// s = big_C * vol^(1/(d(d-1))), clamped below at 1.
double recommend_s(int d, double vol, double big_C);
double recommend_s(const Body& body, Rng& rng, double big_C);

// p = min(1, small_c / (s R)) with R the actual circumradius.
double threshold_p(double s, double circumradius, double small_c);

// Rank-deficient branch: an exact integer normal orthogonal to every
// enumerated point, ratio 1.
SliceResult degenerate_hyperplane(const Lattice& lat, const PointSet& ps);

// Las Vegas finder: sample y ~ D_{L*,s} and accept the first nonzero y whose
// slice ratio is >= p/2 (exact integer counting against ps).
SliceResult randomized_finder(const Lattice& lat, const Body& body, const PointSet& ps,
                              const FinderConfig& cfg, Rng& rng);

// Exhaustive ground-truth oracle over hyperplanes spanned by (d-1)-subsets of
// the point set (plus dual-search and dual-basis candidates). Ties broken by
// the lexicographically smallest primitive normal.
SliceResult best_slice_exact(const Lattice& lat, const PointSet& ps);

// Heuristic: score every dual vector of norm <= norm_bound.
SliceResult best_slice_dual_search(const Lattice& lat, const PointSet& ps, double norm_bound);

struct BoundReport {
    std::string body_id;
    int d = 0;
    double vol = 0, vol_err = 0;
    double circumradius = 0;  // after John normalization when applied
    double s_used = 0;
    double p_threshold = 0;
    long long best_ratio_num = 0, best_ratio_den = 1;
    std::string best_method;
    std::optional<double> ratio_randomized;
    std::size_t attempts = 0;
    bool degenerate = false;
    bool john_applied = false;
    std::optional<double> implied_c_theorem;   // best_ratio * d * vol^(1/(d-1)), when ratio < 1
    std::optional<double> implied_c_err;
    std::optional<double> implied_alpha_q1;    // best_ratio * vol^(1/d), span condition holding
    std::optional<double> implied_alpha_err;
    double ahz_baseline = 0;  // best_ratio * C_ahz^d
    double ahz_big_C = 2.0;

    double best_ratio() const {
        return static_cast<double>(best_ratio_num) / static_cast<double>(best_ratio_den);
    }
};

// Full pipeline: John normalization (when supported), enumeration, exact or
// dual-search oracle, randomized finder, report.
BoundReport verify_bound(const Lattice& lat, const Body& body, const FinderConfig& cfg,
                         Rng& rng, const std::string& body_id = "body");

}  // namespace latslice
