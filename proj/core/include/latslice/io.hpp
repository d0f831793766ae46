#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "latslice/body.hpp"
#include "latslice/lattice.hpp"
#include "latslice/slicing.hpp"

namespace latslice {

inline constexpr const char* kVersion = "0.1.0";

// Lattice file: {"dim": d, "basis": [[row0...], ...]}, rows are basis vectors.
Lattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const Lattice& lat);

// Body file: tagged union on "type" in
// {ellipsoid, box, cross_polytope, hpolytope}.
Body body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const Body& body);

nlohmann::json slice_result_to_json(const SliceResult& r);
nlohmann::json bound_report_to_json(const BoundReport& r);

std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& r);

std::string format_double(double v);

}  // namespace latslice
