#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace latslice {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Errors carry a short machine-parsable code next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

// Volume of the unit Euclidean ball in dimension d.
inline double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(std::llabs(a), std::llabs(b));
}

// Divide by the gcd of the entries and fix the sign of the first nonzero
// entry to be positive. Zero vectors pass through unchanged.
inline IntVec primitive_form(IntVec v) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd64(g, v[i]);
    if (g > 1)
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] /= g;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            if (v[i] < 0) v = -v;
            break;
        }
    }
    return v;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace latslice
