#include "latslice/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace latslice {
namespace {

struct LexCmp {
    bool operator()(const IntVec& a, const IntVec& b) const { return lex_less(a, b); }
};

using CandidateSet = std::set<IntVec, LexCmp>;

SliceResult score_candidates(const Lattice& lat, const PointSet& ps,
                             const CandidateSet& candidates, SliceMethod method) {
    if (candidates.empty())
        throw Error("no candidates", "empty hyperplane candidate set");
    SliceResult best;
    bool have = false;
    for (const IntVec& m : candidates) {
        SliceCount sc = slice_count(ps, m);
        bool better = !have || sc.on_hyperplane > best.on_count ||
                      (sc.on_hyperplane == best.on_count && lex_less(m, best.normal_coeffs));
        if (better) {
            best.normal_coeffs = m;
            best.on_count = sc.on_hyperplane;
            best.total = sc.total;
            have = true;
        }
    }
    best.normal = lat.dual().point(best.normal_coeffs);
    best.method = method;
    return best;
}

CandidateSet dual_ball_candidates(const Lattice& lat, double norm_bound,
                                  std::size_t budget) {
    CandidateSet out;
    Lattice dual = lat.dual();
    for_each_point_in_ball(dual, Vec::Zero(lat.dim()), norm_bound,
                           [&](const IntVec& c, double) {
                               if (!c.isZero()) out.insert(primitive_form(c));
                           },
                           budget);
    return out;
}

double binomial_estimate(std::size_t n, int k) {
    double v = 1;
    for (int i = 0; i < k; ++i) v *= static_cast<double>(n - i) / (i + 1);
    return v;
}

}  // namespace

std::string to_string(SliceMethod m) {
    switch (m) {
        case SliceMethod::randomized: return "randomized";
        case SliceMethod::exact_oracle: return "exact_oracle";
        case SliceMethod::dual_search: return "dual_search";
        case SliceMethod::degenerate: return "degenerate";
    }
    return "?";
}

double recommend_s(int d, double vol, double big_C) {
    if (d < 2) throw Error("invalid input", "no hyperplanes in dimension < 2");
    if (!(vol > 0)) throw Error("invalid input", "volume must be positive");
    return std::max(1.0, big_C * std::pow(vol, 1.0 / (d * (d - 1.0))));
}

double recommend_s(const Body& body, Rng& rng, double big_C) {
    return recommend_s(body.dim(), body.volume(rng).value, big_C);
}

double threshold_p(double s, double circumradius, double small_c) {
    if (!(s >= 1) || !(circumradius > 0))
        throw Error("invalid input", "need s >= 1 and positive circumradius");
    return std::min(1.0, small_c / (s * circumradius));
}

SliceResult degenerate_hyperplane(const Lattice& lat, const PointSet& ps) {
    auto normal = integer_normal_of_span(lat, ps.coeffs);
    if (!normal)
        throw Error("full-rank", "point set spans R^d; degenerate branch does not apply");
    SliceResult r;
    r.normal_coeffs = normal->dual_coeffs;
    r.normal = normal->ambient;
    r.on_count = static_cast<long long>(ps.size());
    r.total = static_cast<long long>(ps.size());
    r.method = SliceMethod::degenerate;
    return r;
}

SliceResult randomized_finder(const Lattice& lat, const Body& body, const PointSet& ps,
                              const FinderConfig& cfg, Rng& rng) {
    cfg.validate();
    const int d = lat.dim();
    if (integer_kernel_vector(ps.coeffs, d))
        throw Error("not full dimensional", "use degenerate_hyperplane");
    const double vol = body.volume(rng).value;
    const double s = recommend_s(d, vol, cfg.big_C);
    const double r = body.circumradius();
    const double p = threshold_p(s, r, cfg.small_c);

    Lattice dual = lat.dual();
    // Proof-side guard: Pr[y = 0] <= det(L*) s^-d must stay below p/2.
    const double zero_bound = std::pow(s, -d) * dual.det_abs();
    const bool warned = !(zero_bound < p / 2);
    std::size_t attempts_budget = cfg.max_attempts;
    if (attempts_budget == 0) {
        attempts_budget = std::min<std::size_t>(
            1'000'000, 10 * static_cast<std::size_t>(std::ceil(1.0 / p)));
        if (warned) attempts_budget = std::min<std::size_t>(1'000'000, attempts_budget * 10);
    }

    // Exact sampler for small supports, Klein otherwise.
    double diag = 0;
    for (int i = 0; i < d; ++i) {
        double g = dual.gs_norms()[i];
        diag += g * g;
    }
    const double support_est =
        unit_ball_volume(d) * std::pow(3 * s * std::sqrt(double(d)) + std::sqrt(diag), d) /
        dual.det_abs();
    std::unique_ptr<ExactSampler> exact;
    std::unique_ptr<KleinSampler> klein;
    if (support_est <= 2e6)
        exact = std::make_unique<ExactSampler>(dual, GaussianParam(s));
    else
        klein = std::make_unique<KleinSampler>(dual, GaussianParam(s));

    for (std::size_t attempt = 1; attempt <= attempts_budget; ++attempt) {
        IntVec m = exact ? exact->sample_coeffs(rng) : klein->sample_coeffs(rng);
        if (m.isZero()) continue;
        SliceCount sc = slice_count(ps, m);
        if (2.0 * static_cast<double>(sc.on_hyperplane) >=
            p * static_cast<double>(sc.total)) {
            SliceResult res;
            res.normal_coeffs = m;
            res.normal = dual.point(m);
            res.on_count = sc.on_hyperplane;
            res.total = sc.total;
            res.method = SliceMethod::randomized;
            res.attempts = attempt;
            res.zero_guard_warned = warned;
            return res;
        }
    }
    throw Error("attempts exhausted",
                "no accepted hyperplane; lower small_c or raise max_attempts");
}

SliceResult best_slice_exact(const Lattice& lat, const PointSet& ps) {
    const int d = lat.dim();
    if (ps.size() > 2000 || d > 6)
        throw Error("budget exceeded", "exact oracle limited to <= 2000 points, d <= 6");
    // Deduplicate nonzero points up to sign.
    CandidateSet signless;
    for (const IntVec& c : ps.coeffs) {
        if (c.isZero()) continue;
        IntVec cc = c;
        for (Eigen::Index i = 0; i < cc.size(); ++i) {
            if (cc[i] != 0) {
                if (cc[i] < 0) cc = -cc;
                break;
            }
        }
        signless.insert(cc);
    }
    std::vector<IntVec> pts(signless.begin(), signless.end());
    const int k = d - 1;
    if (binomial_estimate(pts.size(), k) > 2e6)
        throw Error("budget exceeded", "too many point subsets for the exact oracle");

    CandidateSet candidates;
    // Every hyperplane through >= d-1 independent points is spanned by some
    // (d-1)-subset; its normal comes from the integer kernel.
    std::vector<int> comb(k);
    std::vector<IntVec> rows(k);
    if (static_cast<int>(pts.size()) >= k && k >= 1) {
        for (int i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            for (int i = 0; i < k; ++i) rows[i] = pts[comb[i]];
            if (auto m = integer_kernel_vector(rows, d)) candidates.insert(*m);
            int i = k - 1;
            while (i >= 0 && comb[i] == static_cast<int>(pts.size()) - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    // Trivial {0}-only hyperplanes: all dual basis vectors.
    for (int i = 0; i < d; ++i) {
        IntVec e = IntVec::Zero(d);
        e[i] = 1;
        candidates.insert(e);
    }
    // Short dual vectors as extra candidates.
    double max_dual_norm = 0;
    Lattice dual = lat.dual();
    for (int i = 0; i < d; ++i)
        max_dual_norm = std::max(max_dual_norm, dual.basis().row(i).norm());
    try {
        CandidateSet extra = dual_ball_candidates(lat, 1.5 * max_dual_norm, 200'000);
        candidates.insert(extra.begin(), extra.end());
    } catch (const Error&) {
        // dual ball too dense; subset candidates already make the oracle exact
    }
    return score_candidates(lat, ps, candidates, SliceMethod::exact_oracle);
}

SliceResult best_slice_dual_search(const Lattice& lat, const PointSet& ps,
                                   double norm_bound) {
    CandidateSet candidates = dual_ball_candidates(lat, norm_bound, 2'000'000);
    if (candidates.empty())
        throw Error("no candidates", "norm bound below the dual minimum distance");
    return score_candidates(lat, ps, candidates, SliceMethod::dual_search);
}

BoundReport verify_bound(const Lattice& lat, const Body& body, const FinderConfig& cfg,
                         Rng& rng, const std::string& body_id) {
    cfg.validate();
    const int d = lat.dim();
    BoundReport rep;
    rep.body_id = body_id;
    rep.d = d;
    VolumeEstimate ve = body.volume(rng);
    rep.vol = ve.value;
    rep.vol_err = ve.std_error;

    // John normalization; counts stay exact because the transformed lattice
    // keeps the original integer coordinates.
    Lattice working_lat = lat;
    Body working_body = body;
    try {
        JohnResult jr = john_normalize(body, rng);
        working_lat = Lattice(lat.basis() * jr.transform.transpose());
        working_body = jr.transformed_body;
        rep.john_applied = true;
    } catch (const Error& e) {
        if (e.code() != "john unsupported") throw;
    }
    rep.circumradius = working_body.circumradius();

    PointSet ps = enumerate_in_body(working_lat, working_body);
    rep.s_used = recommend_s(d, rep.vol, cfg.big_C);
    rep.p_threshold = threshold_p(rep.s_used, rep.circumradius, cfg.small_c);

    SliceResult best;
    if (integer_kernel_vector(ps.coeffs, d)) {
        best = degenerate_hyperplane(working_lat, ps);
        rep.degenerate = true;
    } else {
        try {
            best = best_slice_exact(working_lat, ps);
        } catch (const Error& e) {
            if (e.code() != "budget exceeded") throw;
            Lattice dual = working_lat.dual();
            double bound = 0;
            for (int i = 0; i < d; ++i)
                bound = std::max(bound, dual.basis().row(i).norm());
            best = best_slice_dual_search(working_lat, ps, 2.0 * bound);
        }
        SliceResult randomized = randomized_finder(working_lat, working_body, ps, cfg, rng);
        rep.ratio_randomized = randomized.ratio();
        rep.attempts = randomized.attempts;
        // best_ratio dominates the randomized ratio; when the exact oracle was
        // unavailable the randomized result may win against the dual search.
        if (randomized.on_count * best.total > best.on_count * randomized.total)
            best = randomized;
    }
    rep.best_ratio_num = best.on_count;
    rep.best_ratio_den = best.total;
    rep.best_method = to_string(best.method);

    const double ratio = rep.best_ratio();
    if (!rep.degenerate && best.on_count < best.total) {
        double c = ratio * d * std::pow(rep.vol, 1.0 / (d - 1.0));
        rep.implied_c_theorem = c;
        rep.implied_c_err = c * rep.vol_err / ((d - 1.0) * rep.vol);
    }
    if (!rep.degenerate) {
        double a = ratio * std::pow(rep.vol, 1.0 / d);
        rep.implied_alpha_q1 = a;
        rep.implied_alpha_err = a * rep.vol_err / (d * rep.vol);
    }
    rep.ahz_baseline = ratio * std::pow(rep.ahz_big_C, d);
    return rep;
}

}  // namespace latslice
