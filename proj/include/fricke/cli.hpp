#pragma once

// Command-line front end: expand, basis, zeros, verify and contour-check.

#include "fricke/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace fricke::cli {

struct RunConfig {
    int precision_bits = 768;
    int trunc_margin = 40;
    int grid_points = 4000;
    std::filesystem::path cache_dir;  // empty: no disk cache
    report::Format output_format = report::Format::Json;
};

// Defaults overridden by FRICKE_CACHE_DIR and FRICKE_PRECISION. Throws
// std::invalid_argument on a malformed or out-of-range value.
RunConfig config_from_environment();

// Throws std::invalid_argument unless precision_bits >= 128 and
// grid_points >= 16.
void validate(const RunConfig& cfg);

// Exit codes: 0 when everything checked passes, 1 when a computation fails or
// a check does not pass, 2 on a usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fricke::cli
