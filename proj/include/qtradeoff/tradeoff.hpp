#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtradeoff/entropy.hpp"

namespace qtradeoff {

// An algorithm with time O~(2^(time_exp*n)) using O~(2^(space_exp*n)) memory.
struct TradeoffPoint {
    Exponent space_exp = 0.0;
    Exponent time_exp = 0.0;
    std::string label;

    double space_base() const;
    double time_base() const;

    static TradeoffPoint from_bases(double space_base, double time_base, std::string label = {});
};

// Points sorted by strictly increasing space, time non-increasing. Plateau
// points (equal time, more space) are allowed so the curve is a step function
// of the space budget.
class TradeoffCurve {
public:
    TradeoffCurve() = default;
    /// Throws std::invalid_argument if the ordering invariants do not hold.
    explicit TradeoffCurve(std::vector<TradeoffPoint> points);

    const std::vector<TradeoffPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Time of the largest achievable point whose space does not exceed the
    /// budget; nullopt when the budget is below the first point.
    std::optional<Exponent> time_at(Exponent space_budget) const;

private:
    std::vector<TradeoffPoint> points_;
};

/// (S, T) -> (sqrt(S), sqrt(2T)): one outer Grover split over half-size sets.
TradeoffPoint fractalize(const TradeoffPoint& p);

struct ClassicalFractalization {
    TradeoffPoint point;        // time clamped to exponent 1
    Exponent raw_time_exp;      // 1 + time_exp/2, unclamped
    bool clamped;
};

/// Classical analogue (S, T) -> (sqrt(S), 2 sqrt(T)).
ClassicalFractalization fractalize_classical(const TradeoffPoint& p);

/// The c with T = 2 / S^c through p. Throws std::invalid_argument if S = 1.
double fit_power_law(const TradeoffPoint& p);

/// Non-dominated subset sorted by space. Exact duplicates keep the smallest
/// label. Throws std::invalid_argument on empty input.
TradeoffCurve pareto_filter(std::span<const TradeoffPoint> points);

/// Adds step points at s = j/steps strictly inside the curve's space range.
TradeoffCurve plateau_complete(const TradeoffCurve& curve, int steps);

/// Union of the curve with up to `depth` repeated fractalizations of every
/// point, Pareto-filtered, then plateau-completed when plateau_steps > 0.
TradeoffCurve fractal_closure(const TradeoffCurve& curve, int depth, int plateau_steps = 0);

struct BandSpec {
    double c_low = 0.0;    // larger c: lower time curve 2/S^c_low
    double c_high = 0.0;   // upper time curve 2/S^c_high
    double tol = 0.0;      // in base terms
    double s_min_base = 1.0;
    double s_max_base = 2.0;
};

struct BandReport {
    bool passed = true;
    std::size_t checked = 0;
    double worst_margin = 0.0;   // min over points of distance inside the band (base terms)
    std::optional<TradeoffPoint> worst_point;
    bool worst_is_upper = false;
};

/// Verifies 2/S^c_low - tol <= T <= 2/S^c_high + tol for every point with
/// S in [s_min_base, s_max_base]. Requires c_low >= c_high.
BandReport check_band(const TradeoffCurve& curve, const BandSpec& spec);

}  // namespace qtradeoff
