#include "latslice/io.hpp"

#include <nlohmann/json.hpp>

namespace latslice {

using nlohmann::json;

namespace {

Mat matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw Error("parse error", "expected a nonempty array of rows");
    const auto r = rows.size();
    const auto c = rows[0].size();
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("parse error", "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Vec vector_from_json(const json& a) {
    Vec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
    return v;
}

json vector_to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

Lattice lattice_from_json(const json& j) {
    Mat basis = matrix_from_json(j.at("basis"));
    if (j.contains("dim") && j.at("dim").get<int>() != basis.rows())
        throw Error("parse error", "dim field disagrees with basis size");
    return Lattice(std::move(basis));
}

json lattice_to_json(const Lattice& lat) {
    return json{{"dim", lat.dim()}, {"basis", matrix_to_json(lat.basis())}};
}

Body body_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "ellipsoid") return Body::ellipsoid(matrix_from_json(j.at("shape")));
    if (type == "box") return Body::box(vector_from_json(j.at("half_widths")));
    if (type == "cross_polytope")
        return Body::cross_polytope(vector_from_json(j.at("scales")));
    if (type == "hpolytope")
        return Body::hpolytope(matrix_from_json(j.at("normals")),
                               vector_from_json(j.at("offsets")));
    throw Error("parse error", "unknown body type: " + type);
}

json body_to_json(const Body& body) {
    const auto& v = body.variant();
    if (auto* e = std::get_if<Ellipsoid>(&v))
        return json{{"type", "ellipsoid"}, {"shape", matrix_to_json(e->shape)}};
    if (auto* b = std::get_if<Box>(&v))
        return json{{"type", "box"}, {"half_widths", vector_to_json(b->half_widths)}};
    if (auto* c = std::get_if<CrossPolytope>(&v))
        return json{{"type", "cross_polytope"}, {"scales", vector_to_json(c->scales)}};
    if (auto* h = std::get_if<SymmetricHPolytope>(&v))
        return json{{"type", "hpolytope"},
                    {"normals", matrix_to_json(h->normals)},
                    {"offsets", vector_to_json(h->offsets)}};
    throw Error("unsupported", "pullback bodies have no file representation");
}

json slice_result_to_json(const SliceResult& r) {
    json j;
    j["version"] = kVersion;
    json coeffs = json::array();
    for (Eigen::Index i = 0; i < r.normal_coeffs.size(); ++i)
        coeffs.push_back(r.normal_coeffs[i]);
    j["normal_dual_coeffs"] = coeffs;
    j["normal"] = vector_to_json(r.normal);
    j["on_count"] = r.on_count;
    j["total"] = r.total;
    j["ratio"] = r.ratio();
    j["method"] = to_string(r.method);
    if (r.method == SliceMethod::randomized) {
        j["attempts"] = r.attempts;
        j["zero_guard_warned"] = r.zero_guard_warned;
    }
    return j;
}

json bound_report_to_json(const BoundReport& r) {
    json j;
    j["version"] = kVersion;
    j["body_id"] = r.body_id;
    j["d"] = r.d;
    j["vol"] = r.vol;
    j["vol_err"] = r.vol_err;
    j["circumradius"] = r.circumradius;
    j["s"] = r.s_used;
    j["p"] = r.p_threshold;
    j["best_ratio_num"] = r.best_ratio_num;
    j["best_ratio_den"] = r.best_ratio_den;
    j["best_ratio"] = r.best_ratio();
    j["method"] = r.best_method;
    j["degenerate"] = r.degenerate;
    j["john_applied"] = r.john_applied;
    if (r.ratio_randomized) j["ratio_randomized"] = *r.ratio_randomized;
    j["attempts"] = r.attempts;
    if (r.implied_c_theorem) j["implied_c_theorem"] = *r.implied_c_theorem;
    if (r.implied_c_err) j["implied_c_err"] = *r.implied_c_err;
    if (r.implied_alpha_q1) j["implied_alpha_q1"] = *r.implied_alpha_q1;
    if (r.implied_alpha_err) j["implied_alpha_err"] = *r.implied_alpha_err;
    j["ahz_baseline"] = r.ahz_baseline;
    j["ahz_big_C"] = r.ahz_big_C;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string bound_report_csv_header() {
    return "body_id,d,vol,vol_err,circumradius,s,p,best_ratio_num,best_ratio_den,"
           "method,implied_c_theorem,implied_alpha_q1,attempts";
}

std::string bound_report_csv_row(const BoundReport& r) {
    std::string row = r.body_id;
    auto add = [&](const std::string& s) { row += "," + s; };
    add(std::to_string(r.d));
    add(format_double(r.vol));
    add(format_double(r.vol_err));
    add(format_double(r.circumradius));
    add(format_double(r.s_used));
    add(format_double(r.p_threshold));
    add(std::to_string(r.best_ratio_num));
    add(std::to_string(r.best_ratio_den));
    add(r.best_method);
    add(r.implied_c_theorem ? format_double(*r.implied_c_theorem) : "");
    add(r.implied_alpha_q1 ? format_double(*r.implied_alpha_q1) : "");
    add(std::to_string(r.attempts));
    return row;
}

}  // namespace latslice
