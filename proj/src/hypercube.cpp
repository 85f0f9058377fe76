#include "qtradeoff/hypercube.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace qtradeoff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack for floor() on budget ratios that land on a grid point up to rounding.
constexpr double kFloorSlack = 1e-9;
constexpr double kOnGridSlack = 1e-12;

// Predecessor Grover cost 1/2 h(a/b) b between layers at positions a <= b.
inline double grover_step(double a, double b)
{
    return 0.5 * entropy(a / b) * b;
}

// Row-major (count+1)^2 table of grover_step(node(u), node(t)) for u <= t.
std::vector<double> grover_table(const LayerGrid& layers)
{
    const int n = layers.count + 1;
    std::vector<double> table(static_cast<std::size_t>(n) * n, 0.0);
    for (int t = 1; t < n; ++t) {
        const double b = layers.node(t);
        for (int u = 0; u < t; ++u)
            table[static_cast<std::size_t>(u) * n + t] = grover_step(layers.node(u), b);
    }
    return table;
}

// One (s, alpha_1) cell: 1/2 + P[k+1, 1/2] with the layer recursion unrolled
// in place (descending t keeps P[u < t] at the previous layer).
double cell_search_cost(Exponent s, const LayerGrid& layers, std::span<const double> grover,
                        const TableRow& t_prev, int k, std::vector<double>& p, std::vector<double>& q)
{
    const int n = layers.count + 1;
    const int last = layers.count;
    q.assign(static_cast<std::size_t>(n), 0.0);
    for (int d = 1; d < n; ++d)
        q[d] = t_prev.subcube(s, layers.gap(0, d));

    p.assign(static_cast<std::size_t>(n), 0.0);
    for (int t = 1; t < n; ++t)
        p[t] = grover[t] + q[t];

    for (int layer = 3; layer <= k + 1; ++layer) {
        const int t_lo = layer == k + 1 ? last : 1;
        for (int t = last; t >= t_lo; --t) {
            double best = p[t];
            const double* g = grover.data() + t;
            for (int u = 0; u < t; ++u) {
                const double v = g[static_cast<std::size_t>(u) * n] + std::max(p[u], q[t - u]);
                if (v < best)
                    best = v;
            }
            p[t] = best;
        }
    }
    return 0.5 + p[last];
}

int candidate_count_on_grid(Exponent s, int alpha_grid)
{
    const double lam = lambda_from_budget(s, 1.0);
    const int a_max = static_cast<int>(std::floor(lam * 2 * alpha_grid + kOnGridSlack));
    return std::min(a_max, alpha_grid) + 1;
}

}  // namespace

void GridSpec::validate() const
{
    if (s_grid < 16)
        throw std::invalid_argument("GridSpec: s_grid must be >= 16");
    if (alpha_grid < 16)
        throw std::invalid_argument("GridSpec: alpha_grid must be >= 16");
    if (depth_cap < 1)
        throw std::invalid_argument("GridSpec: depth_cap must be >= 1");
    if (!(converge_tol > 0.0))
        throw std::invalid_argument("GridSpec: converge_tol must be > 0");
    if (k < 1 || k > 8)
        throw std::invalid_argument("GridSpec: k must lie in [1, 8]");
}

Fraction lambda_from_budget(Exponent s, Fraction c)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("lambda_from_budget: s must lie in [0, 1]");
    if (!(c > 0.0 && c <= 1.0))
        throw std::domain_error("lambda_from_budget: c must lie in (0, 1]");
    return std::min(entropy_inverse(std::min(s / c, 1.0)), 0.5);
}

TableRow::TableRow(std::vector<Exponent> values) : values_(std::move(values))
{
    if (values_.size() < 2)
        throw std::invalid_argument("TableRow: need at least two budget samples");
}

TableRow TableRow::base(int s_grid)
{
    std::vector<Exponent> v(static_cast<std::size_t>(s_grid));
    for (int j = 0; j < s_grid; ++j)
        v[static_cast<std::size_t>(j)] = table_T_base(j);
    return TableRow(std::move(v));
}

Exponent TableRow::at_budget(Exponent s) const
{
    const int last = size() - 1;
    if (s >= 1.0)
        return values_.back();
    const int j = static_cast<int>(std::floor(s * last + kFloorSlack));
    return values_[static_cast<std::size_t>(std::clamp(j, 0, last))];
}

Exponent TableRow::subcube(Exponent s, double delta) const
{
    if (delta <= 0.0)
        return 0.0;
    return delta * at_budget(s / delta);
}

LayerGrid::LayerGrid(Fraction a1, int alpha_grid)
    : alpha1(a1), step((0.5 - a1) / alpha_grid), count(alpha_grid)
{
    if (!(a1 >= 0.0 && a1 <= 0.5))
        throw std::invalid_argument("LayerGrid: alpha1 must lie in [0, 1/2]");
    if (alpha_grid < 1)
        throw std::invalid_argument("LayerGrid: need at least one step");
}

std::vector<Fraction> alpha1_candidates(Exponent s, int alpha_grid)
{
    const double lam = lambda_from_budget(s, 1.0);
    const int on_grid = candidate_count_on_grid(s, alpha_grid);
    std::vector<Fraction> out;
    out.reserve(static_cast<std::size_t>(on_grid) + 1);
    for (int a = 0; a < on_grid; ++a)
        out.push_back(0.5 * a / alpha_grid);
    if (lam - out.back() > kOnGridSlack)
        out.push_back(lam);
    return out;
}

Exponent table_T_base(int s_idx)
{
    if (s_idx < 0)
        throw std::invalid_argument("table_T_base: negative index");
    return 1.0;
}

Exponent table_P_layer2(Exponent s, Fraction alpha1, Fraction alpha2, const TableRow& t_prev)
{
    if (!(alpha1 >= 0.0 && alpha1 <= alpha2 && alpha2 > 0.0 && alpha2 <= 0.5))
        throw std::invalid_argument("table_P_layer2: need 0 <= alpha1 <= alpha2 <= 1/2");
    return grover_step(alpha1, alpha2) + t_prev.subcube(s, alpha2 - alpha1);
}

Exponent table_P_layer2(Exponent s, const LayerGrid& layers, int target, const TableRow& t_prev)
{
    if (target < 0 || target > layers.count)
        throw std::invalid_argument("table_P_layer2: target outside the layer grid");
    if (target == 0)
        return 0.0;
    return grover_step(layers.node(0), layers.node(target)) + t_prev.subcube(s, layers.gap(0, target));
}

Exponent table_P_general(Exponent s, const LayerGrid& layers, std::span<const Exponent> p_slice,
                         int target, const TableRow& t_prev)
{
    if (p_slice.size() != static_cast<std::size_t>(layers.count) + 1)
        throw std::invalid_argument("table_P_general: slice does not match the layer grid");
    if (target < 0 || target > layers.count)
        throw std::invalid_argument("table_P_general: target outside the layer grid");
    const double b = layers.node(target);
    double best = p_slice[static_cast<std::size_t>(target)];
    for (int u = 0; u < target; ++u) {
        const double v = grover_step(layers.node(u), b) +
                         std::max(p_slice[static_cast<std::size_t>(u)], t_prev.subcube(s, layers.gap(u, target)));
        if (v < best)
            best = v;
    }
    return best;
}

Exponent table_T_step(Exponent s, const GridSpec& grid, const TableRow& t_prev)
{
    double best = kInf;
    for (const double alpha1 : alpha1_candidates(s, grid.alpha_grid)) {
        const double pre = entropy(alpha1);
        if (pre >= best)
            continue;
        const LayerGrid layers(alpha1, grid.alpha_grid);
        std::vector<double> p(static_cast<std::size_t>(layers.count) + 1);
        for (int t = 0; t <= layers.count; ++t)
            p[static_cast<std::size_t>(t)] = table_P_layer2(s, layers, t, t_prev);
        for (int layer = 3; layer <= grid.k + 1; ++layer) {
            std::vector<double> next(p.size());
            const int t_lo = layer == grid.k + 1 ? layers.count : 0;
            for (int t = t_lo; t <= layers.count; ++t)
                next[static_cast<std::size_t>(t)] = table_P_general(s, layers, p, t, t_prev);
            p = std::move(next);
        }
        best = std::min(best, std::max(pre, 0.5 + p.back()));
    }
    return best;
}

HypercubeResult optimize_serial(const GridSpec& grid)
{
    grid.validate();
    HypercubeResult result;
    result.grid = grid;
    TableRow prev = TableRow::base(grid.s_grid);
    for (int r = 1; r <= grid.depth_cap; ++r) {
        std::vector<double> next(static_cast<std::size_t>(grid.s_grid));
        double residual = 0.0;
        for (int j = 0; j < grid.s_grid; ++j) {
            const double v = std::min(prev[j], table_T_step(grid.s_value(j), grid, prev));
            next[static_cast<std::size_t>(j)] = v;
            residual = std::max(residual, std::abs(v - prev[j]));
        }
        prev = TableRow(std::move(next));
        result.depth_reached = r;
        result.residual = residual;
        if (residual < grid.converge_tol) {
            result.converged = true;
            break;
        }
    }
    result.t_row.assign(prev.values().begin(), prev.values().end());
    return result;
}

HypercubeResult optimize(const GridSpec& grid, const OptimizeOptions& options)
{
    grid.validate();
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    const int ns = grid.s_grid;
    const int na = grid.alpha_grid;

    // Per-budget candidate data does not change between rounds.
    std::vector<int> on_grid(static_cast<std::size_t>(ns));
    std::vector<double> off_grid(static_cast<std::size_t>(ns), -1.0);
    for (int j = 0; j < ns; ++j) {
        const auto cands = alpha1_candidates(grid.s_value(j), na);
        on_grid[static_cast<std::size_t>(j)] = candidate_count_on_grid(grid.s_value(j), na);
        if (static_cast<int>(cands.size()) > on_grid[static_cast<std::size_t>(j)])
            off_grid[static_cast<std::size_t>(j)] = cands.back();
    }
    std::vector<std::vector<double>> grids;
    for (int a = 0; a <= na; ++a)
        grids.push_back(grover_table(LayerGrid(0.5 * a / na, na)));

    HypercubeResult result;
    result.grid = grid;
    TableRow prev = TableRow::base(ns);
    std::vector<double> best(static_cast<std::size_t>(ns));
    for (int r = 1; r <= grid.depth_cap; ++r) {
        std::fill(best.begin(), best.end(), kInf);
        // alpha_1 ascending per cell; each cell is owned by one thread, so the
        // min reduction is independent of scheduling.
        for (int a = 0; a <= na; ++a) {
            const double alpha1 = 0.5 * a / na;
            const double pre = entropy(alpha1);
            const LayerGrid layers(alpha1, na);
            const auto& grover = grids[static_cast<std::size_t>(a)];
#pragma omp parallel num_threads(threads)
            {
                std::vector<double> p, q;
#pragma omp for schedule(dynamic, 4)
                for (int j = 0; j < ns; ++j) {
                    auto& b = best[static_cast<std::size_t>(j)];
                    if (a >= on_grid[static_cast<std::size_t>(j)] || pre >= b)
                        continue;
                    const double v = std::max(pre, cell_search_cost(grid.s_value(j), layers, grover, prev, grid.k, p, q));
                    b = std::min(b, v);
                }
            }
        }
#pragma omp parallel num_threads(threads)
        {
            std::vector<double> p, q;
#pragma omp for schedule(dynamic, 1)
            for (int j = 0; j < ns; ++j) {
                const double alpha1 = off_grid[static_cast<std::size_t>(j)];
                auto& b = best[static_cast<std::size_t>(j)];
                if (alpha1 < 0.0 || entropy(alpha1) >= b)
                    continue;
                const LayerGrid layers(alpha1, na);
                const auto grover = grover_table(layers);
                const double v = std::max(entropy(alpha1), cell_search_cost(grid.s_value(j), layers, grover, prev, grid.k, p, q));
                b = std::min(b, v);
            }
        }

        std::vector<double> next(static_cast<std::size_t>(ns));
        double residual = 0.0;
        for (int j = 0; j < ns; ++j) {
            const double v = std::min(prev[j], best[static_cast<std::size_t>(j)]);
            next[static_cast<std::size_t>(j)] = v;
            residual = std::max(residual, std::abs(v - prev[j]));
        }
        prev = TableRow(std::move(next));
        result.depth_reached = r;
        result.residual = residual;
        if (residual < grid.converge_tol) {
            result.converged = true;
            break;
        }
    }
    result.t_row.assign(prev.values().begin(), prev.values().end());
    return result;
}

Exponent HypercubeResult::time_at(Exponent s) const
{
    const TableRow r = row();
    return std::min(r.at_budget(s), table_T_step(s, grid, r));
}

TradeoffCurve HypercubeResult::curve() const
{
    const std::string label = "hypercube k=" + std::to_string(grid.k);
    std::vector<TradeoffPoint> pts;
    for (int j = 0; j < grid.s_grid; ++j) {
        const double s = grid.s_value(j);
        const double t = t_row[static_cast<std::size_t>(j)];
        if (s <= t)
            pts.push_back({s, t, label});
    }
    pts.push_back({full_memory_time(), full_memory_time(), label});
    return plateau_complete(pareto_filter(pts), grid.s_grid - 1);
}

namespace {

// Chain forward under balance (a_{i+1} - a_i) g = t_i. Returns t_{k+1} and
// the schedule; the last position exceeds 1/2 when the chain overshoots.
std::pair<double, std::vector<double>> balanced_chain(double g, double a1, double a2, int k)
{
    std::vector<double> a{a1, a2};
    double t = grover_step(a1, a2) + (a2 - a1) * g;
    for (int i = 2; i <= k; ++i) {
        const double next = a.back() + t / g;
        if (next > 0.5) {
            a.push_back(next);
            return {t, a};
        }
        t = grover_step(a.back(), next) + t;
        a.push_back(next);
    }
    return {t, a};
}

std::pair<double, std::vector<double>> best_chain(double g, int k)
{
    const double a1 = entropy_inverse(std::min(g, 1.0));
    if (k == 1 || a1 >= 0.5)
        return {grover_step(a1, 0.5) + (0.5 - a1) * g, {a1, 0.5}};
    double lo = a1;
    double hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (balanced_chain(g, a1, mid, k).second.back() < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    auto [t, a] = balanced_chain(g, a1, lo, k);
    a.resize(static_cast<std::size_t>(k) + 1);
    a.back() = 0.5;
    return {t, a};
}

}  // namespace

GammaResult unconstrained_gamma(int k)
{
    if (k < 1 || k > 8)
        throw std::invalid_argument("unconstrained_gamma: k must lie in [1, 8]");
    double lo = 0.5;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double g = 0.5 * (lo + hi);
        if (0.5 + best_chain(g, k).first > g)
            lo = g;
        else
            hi = g;
    }
    GammaResult out;
    out.g = 0.5 * (lo + hi);
    out.base = std::exp2(out.g);
    auto [t, schedule] = best_chain(out.g, k);
    out.schedule = std::move(schedule);
    out.residual = std::abs(0.5 + t - out.g);
    out.converged = out.residual < 1e-9;
    return out;
}

std::span<const PublishedCell> published_complexities()
{
    static constexpr std::array<double, 6> kRows[] = {
        {2.0, 2.0, 2.0, 2.0, 2.0, 2.0},
        {1.966319, 1.955016, 1.953075, 1.952799, 1.952799, 1.952799},
        {1.933180, 1.911044, 1.907250, 1.906712, 1.906712, 1.906712},
        {1.933180, 1.911044, 1.907250, 1.906712, 1.906712, 1.906712},
        {1.931984, 1.843999, 1.830741, 1.828918, 1.828918, 1.828918},
        {1.868583, 1.826044, 1.818802, 1.817776, 1.817776, 1.817776},
    };
    static constexpr std::array<std::optional<double>, 6> kBudgets = {1.0, 1.2, 1.4, 1.6, 1.8, std::nullopt};
    static const std::vector<PublishedCell> cells = [] {
        std::vector<PublishedCell> v;
        for (int k = 1; k <= 6; ++k)
            for (std::size_t row = 0; row < kBudgets.size(); ++row)
                v.push_back({k, kBudgets[row], kRows[row][static_cast<std::size_t>(k - 1)]});
        return v;
    }();
    return cells;
}

double reproduce_cell(const HypercubeResult& result, const PublishedCell& cell)
{
    if (cell.k != result.grid.k)
        throw std::invalid_argument("reproduce_cell: table computed for k=" + std::to_string(result.grid.k));
    if (!cell.s_base)
        return std::exp2(result.full_memory_time());
    return std::exp2(result.time_at(std::log2(*cell.s_base)));
}

}  // namespace qtradeoff
