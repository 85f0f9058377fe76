#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtradeoff/tradeoff.hpp"

namespace qtradeoff {

// One labelled point series of a figure. Reference lines such as T = S are
// not tradeoff curves, so series are plain point lists.
struct FigureSeries {
    std::string label;
    std::vector<TradeoffPoint> points;
};

/// Optimisation and improved D&C curves, the band 2/S^0.268 .. 2/S^0.201,
/// the T = S line and the balance point.
std::vector<FigureSeries> dnq_figure();

/// Hypercube k=6 and pairwise curves, the band 2/S^0.161 .. 2/S^0.099, the
/// T = S line and the unconstrained k=6 point. Uses the table cache if given.
std::vector<FigureSeries> permutation_figure(const std::filesystem::path& cache_dir, int threads);

/// All series as one curve CSV with the series name in the label column.
/// Throws std::invalid_argument on an empty set.
std::string figure_to_csv(const std::vector<FigureSeries>& series);
void export_figure_data(const std::vector<FigureSeries>& series, const std::filesystem::path& out);

/// Command-line entry point. Exit status 0 on success, 1 on a failed check,
/// 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtradeoff
