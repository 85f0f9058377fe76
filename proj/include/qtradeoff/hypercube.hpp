#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtradeoff/entropy.hpp"
#include "qtradeoff/tradeoff.hpp"

namespace qtradeoff {

// Discretisation of the constrained Hypercube Path optimizer.
//   s_j     = j / (s_grid - 1), j = 0..s_grid-1   (memory budget exponent)
//   alpha_1 = a / (2 alpha_grid), a = 0..alpha_grid, plus alpha_1 = lambda(s)
//   alpha_2..alpha_k range over alpha_1 + (1/2 - alpha_1) * j / alpha_grid
struct GridSpec {
    int s_grid = 256;
    int alpha_grid = 128;
    int depth_cap = 64;
    double converge_tol = 1e-6;
    int k = 6;

    /// Throws std::invalid_argument unless s_grid, alpha_grid >= 16,
    /// depth_cap >= 1, converge_tol > 0 and 1 <= k <= 8.
    void validate() const;
    double s_value(int j) const { return static_cast<double>(j) / (s_grid - 1); }
};

/// Largest precomputation cutoff whose table fits a budget s on a subcube of
/// relative dimension c: min(h^-1(min(s/c, 1)), 1/2).
Fraction lambda_from_budget(Exponent s, Fraction c);

/// One row T[r, .] of the optimal-complexity table over the s grid.
class TableRow {
public:
    explicit TableRow(std::vector<Exponent> values);
    static TableRow base(int s_grid);   // T[0, s] = 1

    std::span<const Exponent> values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }
    Exponent operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }

    /// T at budget s rounded down to the grid.
    Exponent at_budget(Exponent s) const;
    /// Cost of a subcube of relative dimension delta under budget s:
    /// delta * T[min(s / delta, 1)], budget rounded down; 0 for delta = 0.
    Exponent subcube(Exponent s, double delta) const;

private:
    std::vector<Exponent> values_;
};

/// Layer positions for a fixed alpha_1: node(0) = alpha_1, node(count) = 1/2,
/// uniformly spaced. Gaps are (t - u) * step so every caller sees the same
/// rounding.
struct LayerGrid {
    Fraction alpha1 = 0.0;
    double step = 0.0;
    int count = 0;

    LayerGrid(Fraction alpha1, int alpha_grid);
    Fraction node(int t) const { return t == count ? 0.5 : alpha1 + t * step; }
    double gap(int u, int t) const { return (t - u) * step; }
};

/// alpha_1 values tried at budget s: a / (2 alpha_grid) up to lambda(s), then
/// lambda(s) itself when it falls between grid points.
std::vector<Fraction> alpha1_candidates(Exponent s, int alpha_grid);

/// T[0, s] = 1: direct quantum search, no memory.
Exponent table_T_base(int s_idx);

/// P[r, s, alpha1, 2, alpha2] = 1/2 h(alpha1/alpha2) alpha2 + subcube(alpha2 - alpha1).
/// Throws std::invalid_argument unless 0 <= alpha1 <= alpha2 <= 1/2, alpha2 > 0.
Exponent table_P_layer2(Exponent s, Fraction alpha1, Fraction alpha2, const TableRow& t_prev);

/// Same value at layer node `target` of a LayerGrid.
Exponent table_P_layer2(Exponent s, const LayerGrid& layers, int target, const TableRow& t_prev);

/// P[r, s, alpha1, i, node(target)] for i >= 3 given the layer i-1 slice over
/// the same nodes. The predecessor alpha_{i-1} ranges over node(0..target);
/// node(0) = alpha1 and node(target) are collapsed layers. Throws
/// std::invalid_argument if the slice does not cover the grid.
Exponent table_P_general(Exponent s, const LayerGrid& layers, std::span<const Exponent> p_slice,
                         int target, const TableRow& t_prev);

/// min over alpha_1 in {0, grid, lambda(s)} of max(h(alpha_1), 1/2 + P[k+1, 1/2]),
/// evaluated with the plain per-cell operations above.
Exponent table_T_step(Exponent s, const GridSpec& grid, const TableRow& t_prev);

struct HypercubeResult {
    GridSpec grid;
    std::vector<Exponent> t_row;
    int depth_reached = 0;
    double residual = 0.0;
    bool converged = false;

    TableRow row() const { return TableRow(t_row); }
    /// Time exponent at an exact budget: one more T step from the final row.
    Exponent time_at(Exponent s) const;
    /// Time with unlimited memory (s = 1); the optimum uses space = time.
    Exponent full_memory_time() const { return t_row.back(); }
    /// Pareto-filtered, plateau-completed curve {(s_j, T_j)} for s_j <= T_j.
    TradeoffCurve curve() const;
};

struct OptimizeOptions {
    int threads = 0;   // 0: OpenMP default
};

/// Depth-iterated two-table DP; cells of a round run on OpenMP threads.
HypercubeResult optimize(const GridSpec& grid, const OptimizeOptions& options = {});

/// Serial reference: each cell via table_T_step.
HypercubeResult optimize_serial(const GridSpec& grid);

struct GammaResult {
    Exponent g = 0.0;
    double base = 0.0;
    std::vector<Fraction> schedule;   // alpha_1 < ... < alpha_{k+1} = 1/2
    double residual = 0.0;
    bool converged = false;
};

/// Unconstrained balance system: t_1 = 0,
/// t_{i+1} = 1/2 h(a_i/a_{i+1}) a_{i+1} + max((a_{i+1} - a_i) g, t_i),
/// g = max(h(a_1), 1/2 + t_{k+1}); 1 <= k <= 8.
GammaResult unconstrained_gamma(int k);

/// Published optimal times per (k, S); s_base empty for the S = T row.
struct PublishedCell {
    int k;
    std::optional<double> s_base;
    double t_base;
};
std::span<const PublishedCell> published_complexities();

/// Computed base for a published cell.
double reproduce_cell(const HypercubeResult& result, const PublishedCell& cell);

// ---- table cache ------------------------------------------------------

inline constexpr int kCacheFormatVersion = 1;

std::string cache_file_name(const GridSpec& grid);
std::string cache_to_json(const HypercubeResult& result);
/// nullopt for malformed documents, other format versions, or grid mismatch.
std::optional<HypercubeResult> cache_from_json(const std::string& text, const GridSpec& grid);

std::optional<HypercubeResult> load_cached(const std::filesystem::path& dir, const GridSpec& grid);
void store_cached(const std::filesystem::path& dir, const HypercubeResult& result);

}  // namespace qtradeoff
