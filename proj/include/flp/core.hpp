#ifndef FLP_CORE_HPP
#define FLP_CORE_HPP

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flp {

/// A location in the 2-D Euclidean plane. Coordinates must be finite.
struct Point {
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

/// A reported location together with a public positive weight.
struct Agent {
    Point location;
    double weight{1.0};
};

Agent make_agent(Point location, double weight);

/// An ordered multiset of agents, optionally with a prediction of the
/// optimal location and a confidence value c in [0,1).
struct Instance {
    std::vector<Agent> agents;
    std::optional<Point> prediction;
    std::optional<double> confidence;

    std::size_t n() const { return agents.size(); }
};

void validate_instance(const Instance& inst);

/// Utilitarian cost of a facility: average weighted distance, plus the
/// per-agent weighted distances that make it up.
struct CostReport {
    Point facility;
    double total_cost{0.0};
    std::vector<double> per_agent;
};

double euclidean_distance(const Point& a, const Point& b);

double individual_cost(const Point& facility, const Agent& agent);

CostReport utilitarian_cost(const Point& facility, std::span<const Agent> agents);

/// The smaller of the two middle order statistics for an even count, the
/// middle element for an odd count. The result is always an input element.
double lower_median(std::vector<double> values);

inline constexpr double kDegenerateCostEpsilon = 1e-9;

/// mech_cost / opt_cost, guarding the all-coincident degenerate case
/// (opt_cost below epsilon -> ratio 1). Throws if mech_cost is below
/// opt_cost by more than epsilon, which signals a broken optimal solver.
double approximation_ratio(double mech_cost, double opt_cost,
                           double epsilon = kDegenerateCostEpsilon);

}  // namespace flp

#endif  // FLP_CORE_HPP
