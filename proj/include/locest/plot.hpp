#pragma once

#include <string>
#include <vector>

#include "locest/bench_harness.hpp"

namespace locest {

/// Log-log median |error| against n, one polyline per (distribution, estimator).
std::string render_error_svg(const std::vector<BenchRow>& rows, const std::string& title = "median |error| vs n");

}  // namespace locest
