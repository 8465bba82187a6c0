#include "flp/mechanisms.hpp"

#include <cmath>

namespace flp {

namespace {

MechanismOutput median_of(std::vector<double> xs, std::vector<double> ys,
                          std::size_t n, std::size_t phantom_count) {
    MechanismOutput out;
    out.facility = Point{lower_median(std::move(xs)), lower_median(std::move(ys))};
    out.phantom_count = phantom_count;
    out.augmented_size = n + phantom_count;
    return out;
}

}  // namespace

MechanismOutput cm(std::span<const Agent> agents) {
    return gcm(agents, {});
}

MechanismOutput gcm(std::span<const Agent> agents, std::span<const Point> phantoms) {
    if (agents.empty())
        throw std::invalid_argument("empty instance");
    std::vector<double> xs, ys;
    xs.reserve(agents.size() + phantoms.size());
    ys.reserve(agents.size() + phantoms.size());
    for (const auto& a : agents) {
        xs.push_back(a.location.x);
        ys.push_back(a.location.y);
    }
    for (const auto& p : phantoms) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return median_of(std::move(xs), std::move(ys), agents.size(), phantoms.size());
}

std::size_t cmp_phantom_count(std::size_t n, double c) {
    return static_cast<std::size_t>(std::floor(c * static_cast<double>(n) + 1e-9));
}

MechanismOutput cmp(std::span<const Agent> agents, const Point& prediction, double c) {
    if (agents.empty())
        throw std::invalid_argument("empty instance");
    if (!(c >= 0.0 && c < 1.0))
        throw std::invalid_argument("invalid confidence");
    const std::size_t m = cmp_phantom_count(agents.size(), c);
    const std::vector<Point> phantoms(m, prediction);
    return gcm(agents, phantoms);
}

}  // namespace flp
