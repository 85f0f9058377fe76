#include "qtradeoff/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qtradeoff {

double TradeoffPoint::space_base() const { return std::exp2(space_exp); }
double TradeoffPoint::time_base() const { return std::exp2(time_exp); }

TradeoffPoint TradeoffPoint::from_bases(double space_base, double time_base, std::string label)
{
    return {std::log2(space_base), std::log2(time_base), std::move(label)};
}

TradeoffCurve::TradeoffCurve(std::vector<TradeoffPoint> points) : points_(std::move(points))
{
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].space_exp > points_[i - 1].space_exp))
            throw std::invalid_argument("TradeoffCurve: space must be strictly increasing");
        if (points_[i].time_exp > points_[i - 1].time_exp)
            throw std::invalid_argument("TradeoffCurve: time must be non-increasing");
    }
}

std::optional<Exponent> TradeoffCurve::time_at(Exponent space_budget) const
{
    auto it = std::upper_bound(points_.begin(), points_.end(), space_budget,
                               [](double s, const TradeoffPoint& p) { return s < p.space_exp; });
    if (it == points_.begin())
        return std::nullopt;
    return std::prev(it)->time_exp;
}

TradeoffPoint fractalize(const TradeoffPoint& p)
{
    return {0.5 * p.space_exp, 0.5 * (1.0 + p.time_exp), p.label};
}

ClassicalFractalization fractalize_classical(const TradeoffPoint& p)
{
    const double raw = 1.0 + 0.5 * p.time_exp;
    const bool clamped = raw > 1.0;
    return {{0.5 * p.space_exp, clamped ? 1.0 : raw, p.label}, raw, clamped};
}

double fit_power_law(const TradeoffPoint& p)
{
    if (p.space_exp == 0.0)
        throw std::invalid_argument("fit_power_law: degenerate point with S = 1");
    return (1.0 - p.time_exp) / p.space_exp;
}

TradeoffCurve pareto_filter(std::span<const TradeoffPoint> points)
{
    if (points.empty())
        throw std::invalid_argument("pareto_filter: empty input");
    std::vector<TradeoffPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
        if (a.space_exp != b.space_exp)
            return a.space_exp < b.space_exp;
        if (a.time_exp != b.time_exp)
            return a.time_exp < b.time_exp;
        return a.label < b.label;
    });
    std::vector<TradeoffPoint> kept;
    double best_time = std::numeric_limits<double>::infinity();
    for (auto& p : sorted) {
        if (p.time_exp < best_time) {
            best_time = p.time_exp;
            kept.push_back(std::move(p));
        }
    }
    return TradeoffCurve(std::move(kept));
}

TradeoffCurve plateau_complete(const TradeoffCurve& curve, int steps)
{
    if (steps <= 0 || curve.size() < 2)
        return curve;
    const auto& pts = curve.points();
    std::vector<TradeoffPoint> out;
    out.reserve(pts.size() + static_cast<std::size_t>(steps));
    const double last = pts.back().space_exp;
    std::size_t next = 0;
    for (int j = 0; j <= steps; ++j) {
        const double s = static_cast<double>(j) / steps;
        if (s >= last)
            break;
        while (next < pts.size() && pts[next].space_exp <= s)
            out.push_back(pts[next++]);
        if (out.empty() || out.back().space_exp == s)
            continue;
        out.push_back({s, out.back().time_exp, out.back().label});
    }
    while (next < pts.size())
        out.push_back(pts[next++]);
    return TradeoffCurve(std::move(out));
}

TradeoffCurve fractal_closure(const TradeoffCurve& curve, int depth, int plateau_steps)
{
    if (depth < 0 || depth > 32)
        throw std::invalid_argument("fractal_closure: depth must lie in [0, 32]");
    if (curve.empty())
        return curve;
    if (depth == 0 && plateau_steps <= 0)
        return curve;
    std::vector<TradeoffPoint> all(curve.points());
    std::vector<TradeoffPoint> layer(curve.points());
    for (int d = 0; d < depth; ++d) {
        for (auto& p : layer)
            p = fractalize(p);
        all.insert(all.end(), layer.begin(), layer.end());
    }
    return plateau_complete(pareto_filter(all), plateau_steps);
}

BandReport check_band(const TradeoffCurve& curve, const BandSpec& spec)
{
    if (spec.c_low < spec.c_high)
        throw std::invalid_argument("check_band: need c_low >= c_high");
    BandReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& p : curve.points()) {
        const double s = p.space_base();
        if (s < spec.s_min_base || s > spec.s_max_base)
            continue;
        ++report.checked;
        const double t = p.time_base();
        const double lower_margin = t - 2.0 / std::pow(s, spec.c_low);
        const double upper_margin = 2.0 / std::pow(s, spec.c_high) - t;
        const double margin = std::min(lower_margin, upper_margin);
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_point = p;
            report.worst_is_upper = upper_margin < lower_margin;
        }
    }
    report.passed = report.checked > 0 && report.worst_margin >= -spec.tol;
    return report;
}

}  // namespace qtradeoff
