#include "flp/core.hpp"

#include <algorithm>

namespace flp {

Agent make_agent(Point location, double weight) {
    if (!is_finite(location))
        throw std::invalid_argument("agent location must be finite");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("agent weight must be positive and finite");
    return Agent{location, weight};
}

void validate_instance(const Instance& inst) {
    if (inst.agents.empty())
        throw std::invalid_argument("empty instance");
    for (const auto& a : inst.agents) {
        if (!is_finite(a.location))
            throw std::invalid_argument("agent location must be finite");
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw std::invalid_argument("agent weight must be positive and finite");
    }
    if (inst.prediction && !is_finite(*inst.prediction))
        throw std::invalid_argument("prediction must be finite");
    if (inst.confidence && !(*inst.confidence >= 0.0 && *inst.confidence < 1.0))
        throw std::invalid_argument("invalid confidence");
}

double euclidean_distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double individual_cost(const Point& facility, const Agent& agent) {
    return agent.weight * euclidean_distance(facility, agent.location);
}

CostReport utilitarian_cost(const Point& facility, std::span<const Agent> agents) {
    if (agents.empty())
        throw std::invalid_argument("empty instance");
    CostReport report;
    report.facility = facility;
    report.per_agent.reserve(agents.size());
    double sum = 0.0;
    for (const auto& a : agents) {
        const double cost = individual_cost(facility, a);
        report.per_agent.push_back(cost);
        sum += cost;
    }
    report.total_cost = sum / static_cast<double>(agents.size());
    return report;
}

double lower_median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("lower_median of empty list");
    const std::size_t k = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k),
                     values.end());
    return values[k];
}

double approximation_ratio(double mech_cost, double opt_cost, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (mech_cost < opt_cost - epsilon)
        throw std::invalid_argument("optimal solver failed");
    if (opt_cost < epsilon)
        return 1.0;
    return mech_cost / opt_cost;
}

}  // namespace flp
