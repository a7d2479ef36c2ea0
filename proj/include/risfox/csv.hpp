#pragma once

#include <iosfwd>
#include <string>

#include "risfox/sweep.hpp"

namespace risfox {

/// '#'-prefixed metadata block, a header row, then one row per point with
/// "%.17e" numbers and empty fields for absent values.
void emit_csv(const CurveResult& r, std::ostream& os);
/// Writes to `path`; throws std::runtime_error on IO failure.
void emit_csv(const CurveResult& r, const std::string& path);

CurveResult parse_csv(std::istream& is);

}  // namespace risfox
