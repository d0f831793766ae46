#pragma once

#include <string>
#include <vector>

#include "latslice/body.hpp"

namespace latslice {

struct SuiteEntry {
    std::string id;
    Body body;
    bool expect_degenerate = false;
};

// The standard verification suite: cubes, boxes, balls, cross-polytopes and
// symmetric H-polytopes in d = 2..6, volumes spanning several orders of
// magnitude, plus a few thin bodies exercising the degenerate branch.
std::vector<SuiteEntry> standard_suite();

}  // namespace latslice
