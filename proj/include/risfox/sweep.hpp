#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "risfox/scenario.hpp"

namespace risfox {

struct CurveResult {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> warnings;

    bool has_warnings() const { return !warnings.empty(); }
    /// Index of a column, or npos.
    std::size_t column(const std::string& name) const;
};

/// Standard sweep columns.
std::vector<std::string> curve_columns();

/// Every requested method at every transmit power, rows sorted by P_t.
/// Per-point failures become warnings; exact evaluation above n_exact_max
/// elements falls back to Monte Carlo with a warning.
CurveResult run_sweep(const ScenarioConfig& cfg);

/// Exact-vs-MC consistency: run_sweep with exact and mc forced on, plus
/// z-score columns. A |z| > 3 or any missing pair is a warning.
CurveResult run_verify(const ScenarioConfig& cfg);

}  // namespace risfox
