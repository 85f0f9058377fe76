#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qtradeoff/tradeoff.hpp"

namespace qtradeoff {

inline constexpr const char* kCurveCsvHeader = "s_exp,t_exp,s_base,t_base,label";

/// One CSV row: exponents with 12 significant digits, bases with 6 decimals.
std::string format_curve_row(const TradeoffPoint& p, const std::string& label);

/// Header plus one row per point, with each point's own label.
std::string curve_to_csv(const TradeoffCurve& curve);

/// Header plus rows for several curves; the label column carries the curve name.
std::string named_curves_to_csv(const std::vector<std::pair<std::string, TradeoffCurve>>& curves);

/// Reads the shared schema back. Rows keep their file order; callers decide
/// whether to Pareto-filter. Throws std::runtime_error on malformed input.
std::vector<TradeoffPoint> parse_curve_csv(std::istream& in);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_base(double value);
std::string format_exponent(double value);

}  // namespace qtradeoff
