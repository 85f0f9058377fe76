#include "qtradeoff/dnq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace qtradeoff {

namespace {

constexpr int kMaxBalanceLevel = 8;

std::string alpha_label(const char* prefix, double alpha)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s a=%.6f qROM", prefix, alpha);
    return buf;
}

std::string improved_label(double alpha, double beta)
{
    if (beta == 1.0)
        return alpha_label("dnq-opt", alpha);
    char buf[96];
    std::snprintf(buf, sizeof buf, "dnq-improved a=%.6f b=%.9g qRAM", alpha, beta);
    return buf;
}

double log2_sum(double a, double b)
{
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

// Bisection on a function that is >= 0 at lo and <= 0 at hi.
template <class F>
double bisect_root(F f, double lo, double hi)
{
    const auto [a, b] = boost::math::tools::bisect(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(50));
    return 0.5 * (a + b);
}

std::vector<double> beta_grid(const DnqSweep& sweep)
{
    std::vector<double> betas;
    for (int j = 1; j <= sweep.beta_samples; ++j)
        betas.push_back(static_cast<double>(j) / sweep.beta_samples);
    for (int m = 0; m <= sweep.max_dyadic_level; ++m)
        betas.push_back(std::ldexp(1.0, -m));
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
    return betas;
}

void check_sweep(const DnqSweep& sweep)
{
    if (sweep.alpha_samples < 2 || sweep.beta_samples < 1 || sweep.max_dyadic_level < 0 ||
        sweep.max_dyadic_level > 60)
        throw std::invalid_argument("DnqSweep: invalid sample counts");
}

}  // namespace

int level_index(Fraction x)
{
    if (!(x > 0.0 && x <= 0.5))
        throw std::domain_error("level_index: argument must lie in (0, 1/2]");
    if (x == 0.5)
        return 1;
    int k = 1;
    while (x < std::ldexp(1.0, -(k + 1)))
        ++k;
    return k;
}

int dyadic_level(Fraction beta)
{
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("dyadic_level: argument must lie in (0, 1]");
    int m = 0;
    while (beta <= std::ldexp(1.0, -(m + 1)))
        ++m;
    return m;
}

Exponent rate_R(Fraction rho, int ell)
{
    if (ell < 0)
        throw std::domain_error("rate_R: level must be non-negative");
    const double scaled = std::ldexp(rho, ell);
    if (!(rho >= 0.0) || scaled > 1.0)
        throw std::domain_error("rate_R: need 0 <= 2^l * rho <= 1");
    return 1.0 - (2.0 - entropy(scaled)) / std::ldexp(1.0, ell + 1);
}

TradeoffPoint dnq_opt_point(Fraction alpha)
{
    const int k = level_index(alpha);
    const double h = entropy(alpha);
    return {h, std::max(rate_R(alpha, k), h), alpha_label("dnq-opt", alpha)};
}

DnqBalance dnq_opt_balance()
{
    DnqBalance best{0.0, 2.0, 0};
    for (int k = 1; k <= kMaxBalanceLevel; ++k) {
        const double lo = std::ldexp(1.0, -(k + 1));
        const double hi = std::ldexp(1.0, -k);
        auto gap = [k](double a) { return rate_R(a, k) - entropy(a); };
        // R(., k) decreases and h increases on the branch, so the max is
        // minimised at the crossing or at an end.
        double alpha;
        if (gap(lo) <= 0.0)
            alpha = lo;
        else if (gap(hi) >= 0.0)
            alpha = hi;
        else
            alpha = bisect_root(gap, lo, hi);
        const double t = std::max(rate_R(alpha, k), entropy(alpha));
        if (t < best.exponent)
            best = {alpha, t, k};
    }
    return best;
}

TradeoffPoint dnq_improved_point(Fraction alpha, Fraction beta)
{
    const int m = dyadic_level(beta);
    const auto inner = dnq_opt_point(alpha);
    const double time = rate_R(beta, m) + beta * inner.time_exp;
    return {beta * inner.space_exp, time, improved_label(alpha, beta)};
}

Exponent dnq_improved_time_dyadic(Fraction alpha, int m)
{
    const int k = level_index(alpha);
    const double beta = std::ldexp(1.0, -m);
    const double h = entropy(alpha);
    const double search = 1.0 - beta * (2.0 - entropy(std::ldexp(alpha, k))) / std::ldexp(1.0, k + 1);
    return std::max(search, 1.0 - beta + beta * h);
}

TradeoffCurve dnq_opt_curve(const DnqSweep& sweep)
{
    check_sweep(sweep);
    std::vector<TradeoffPoint> pts(static_cast<std::size_t>(sweep.alpha_samples));
    for (int i = 1; i <= sweep.alpha_samples; ++i)
        pts[static_cast<std::size_t>(i - 1)] = dnq_opt_point(0.5 * i / sweep.alpha_samples);
    return pareto_filter(pts);
}

namespace {

TradeoffCurve improved_curve(const DnqSweep& sweep, bool parallel)
{
    check_sweep(sweep);
    const auto betas = beta_grid(sweep);
    const long na = sweep.alpha_samples;
    const long nb = static_cast<long>(betas.size());
    std::vector<TradeoffPoint> pts(static_cast<std::size_t>(na * nb));
#pragma omp parallel for schedule(static) if (parallel)
    for (long jb = 0; jb < nb; ++jb)
        for (long i = 0; i < na; ++i)
            pts[static_cast<std::size_t>(jb * na + i)] =
                dnq_improved_point(0.5 * static_cast<double>(i + 1) / na, betas[static_cast<std::size_t>(jb)]);
    return plateau_complete(pareto_filter(pts), sweep.plateau_steps);
}

}  // namespace

TradeoffCurve dnq_improved_curve(const DnqSweep& sweep) { return improved_curve(sweep, true); }

TradeoffCurve dnq_improved_curve_serial(const DnqSweep& sweep) { return improved_curve(sweep, false); }

TradeoffPoint dnq_coincidence_start()
{
    const auto opt = dnq_opt_balance();
    const double plateau = 0.5 * (1.0 + opt.exponent);
    auto excess = [](double a) { return dnq_opt_point(a).time_exp; };
    // Plain time decreases in alpha up to the balance point.
    const double alpha = bisect_root([&](double a) { return excess(a) - plateau; }, 1e-9, opt.alpha);
    return {entropy(alpha), plateau, alpha_label("dnq-opt", alpha)};
}

ExactDnqCost exact_dnq_cost(int n, int alpha_units)
{
    if (n < 2 || n > 4096 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw std::domain_error("exact_dnq_cost: n must be a power of two in [2, 4096]");
    if (alpha_units < 1 || 2 * alpha_units > n)
        throw std::domain_error("exact_dnq_cost: need 1 <= alpha*n <= n/2");

    ExactDnqCost cost;
    cost.n = n;
    cost.alpha_units = alpha_units;
    int k = 1;
    while (alpha_units < (n >> (k + 1)))
        ++k;
    cost.level = k;

    cost.precompute = binomial_prefix_sum(n, alpha_units);
    double search_log = 0.0;
    for (int i = 0; i < k; ++i) {
        const int size = n >> i;
        cost.search_sizes.push_back(binomial_exact(size, size / 2));
    }
    cost.search_sizes.push_back(binomial_exact(n >> k, alpha_units));
    for (const auto& s : cost.search_sizes)
        search_log += 0.5 * log2_big(s);

    const double pre_log = log2_big(cost.precompute);
    cost.precompute_exp = pre_log / n;
    cost.search_exp = search_log / n;
    cost.total_exp = log2_sum(pre_log, search_log) / n;
    return cost;
}

}  // namespace qtradeoff
