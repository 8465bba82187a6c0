#include "flp/optimal.hpp"

#include <algorithm>
#include <limits>

namespace flp {

namespace {

struct LocalGeometry {
    double anchor_weight{0.0};  // total weight coinciding with f
    Point pull{0.0, 0.0};       // sum w_i (p_i - f)/d_i over non-coincident
    double pull_norm{0.0};
    Point fixed_point{0.0, 0.0};  // Weiszfeld target over non-coincident
    bool fixed_point_valid{false};
    Point nearest_anchor{0.0, 0.0};
};

LocalGeometry local_geometry(const Point& f, std::span<const Agent> agents,
                             double anchor_epsilon) {
    LocalGeometry g;
    double inv_sum = 0.0;
    double tx = 0.0, ty = 0.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& a : agents) {
        const double d = euclidean_distance(f, a.location);
        if (d <= anchor_epsilon) {
            g.anchor_weight += a.weight;
            if (d < nearest) {
                nearest = d;
                g.nearest_anchor = a.location;
            }
            continue;
        }
        const double inv = a.weight / d;
        g.pull.x += inv * (a.location.x - f.x);
        g.pull.y += inv * (a.location.y - f.y);
        inv_sum += inv;
        tx += inv * a.location.x;
        ty += inv * a.location.y;
    }
    g.pull_norm = std::hypot(g.pull.x, g.pull.y);
    if (inv_sum > 0.0) {
        g.fixed_point = Point{tx / inv_sum, ty / inv_sum};
        g.fixed_point_valid = true;
    }
    return g;
}

double unnormalized_cost(const Point& f, std::span<const Agent> agents) {
    double sum = 0.0;
    for (const auto& a : agents) sum += individual_cost(f, a);
    return sum;
}

// One guarded Newton step on sum w_i d(x, p_i). Returns false when the
// Hessian is unusable or no descent was found.
bool newton_step(Point& x, std::span<const Agent> agents, double anchor_epsilon) {
    double gx = 0.0, gy = 0.0;
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
    for (const auto& a : agents) {
        const double rx = x.x - a.location.x;
        const double ry = x.y - a.location.y;
        const double d = std::hypot(rx, ry);
        if (d <= anchor_epsilon) return false;
        const double inv = a.weight / d;
        gx += inv * rx;
        gy += inv * ry;
        const double inv3 = inv / (d * d);
        hxx += inv - inv3 * rx * rx;
        hxy += -inv3 * rx * ry;
        hyy += inv - inv3 * ry * ry;
    }
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0)) return false;
    double sx = -(hyy * gx - hxy * gy) / det;
    double sy = -(-hxy * gx + hxx * gy) / det;
    const double base = unnormalized_cost(x, agents);
    double t = 1.0;
    for (int k = 0; k < 30; ++k) {
        const Point cand{x.x + t * sx, x.y + t * sy};
        if (unnormalized_cost(cand, agents) < base) {
            x = cand;
            return true;
        }
        t *= 0.5;
    }
    return false;
}

}  // namespace

double weighted_direction_norm(const Point& f, std::span<const Agent> agents,
                               double skip_radius) {
    double gx = 0.0, gy = 0.0;
    for (const auto& a : agents) {
        const double d = euclidean_distance(f, a.location);
        if (d <= skip_radius) continue;
        const double inv = a.weight / d;
        gx += inv * (f.x - a.location.x);
        gy += inv * (f.y - a.location.y);
    }
    return std::hypot(gx, gy);
}

OptimalResult geometric_median_iterative(std::span<const Agent> agents,
                                         const SolverConfig& config) {
    if (agents.empty())
        throw std::invalid_argument("empty instance");
    if (!(config.tolerance > 0.0) || config.max_iterations < 1)
        throw std::invalid_argument("invalid solver config");

    OptimalResult result;
    if (agents.size() == 1) {
        result.location = agents[0].location;
        result.cost = 0.0;
        result.converged = true;
        return result;
    }

    double wsum = 0.0;
    Point x{0.0, 0.0};
    for (const auto& a : agents) {
        wsum += a.weight;
        x.x += a.weight * a.location.x;
        x.y += a.weight * a.location.y;
    }
    x.x /= wsum;
    x.y /= wsum;

    const double eps = config.anchor_epsilon;
    bool converged = false;
    int iter = 0;
    int stall = 0;
    for (; iter < config.max_iterations; ++iter) {
        const LocalGeometry g = local_geometry(x, agents, eps);
        if (g.anchor_weight > 0.0) {
            // Standard anchor-point optimality test: the anchor is the
            // minimizer iff the residual pull does not exceed its weight.
            if (g.pull_norm <= g.anchor_weight * (1.0 + 1e-12) + config.tolerance) {
                x = g.nearest_anchor;
                converged = true;
                break;
            }
            if (!g.fixed_point_valid) break;
            // Vardi-Zhang step: move a damped fraction of the Weiszfeld
            // step, leaving the anchor along the residual direction.
            const double damp = 1.0 - g.anchor_weight / g.pull_norm;
            x = Point{x.x + damp * (g.fixed_point.x - x.x),
                      x.y + damp * (g.fixed_point.y - x.y)};
            continue;
        }
        if (g.pull_norm <= config.tolerance) {
            converged = true;
            break;
        }
        const Point next = g.fixed_point;
        const double move = euclidean_distance(next, x);
        x = next;
        stall = (move <= 1e-17 * (1.0 + std::abs(x.x) + std::abs(x.y))) ? stall + 1 : 0;
        if (stall >= 3) break;  // fixed point reached above tolerance
    }

    // Newton polish for the rare instances where the fixed point stalls or
    // crawls (near-critical anchors) with a residual above the tolerance.
    // Runs on its own small budget even when the main loop spent all of
    // max_iterations.
    if (!converged) {
        for (int k = 0; k < 100; ++k, ++iter) {
            const LocalGeometry g = local_geometry(x, agents, eps);
            if (g.anchor_weight > 0.0) {
                if (g.pull_norm <= g.anchor_weight * (1.0 + 1e-12) + config.tolerance) {
                    x = g.nearest_anchor;
                    converged = true;
                }
                break;
            }
            if (g.pull_norm <= config.tolerance) {
                converged = true;
                break;
            }
            if (!newton_step(x, agents, eps)) break;
        }
    }

    result.location = x;
    result.cost = utilitarian_cost(x, agents).total_cost;
    result.iterations = iter;
    result.converged = converged;
    return result;
}

GridResult geometric_median_grid(std::span<const Agent> agents,
                                 double bounding_margin, int resolution) {
    if (agents.empty())
        throw std::invalid_argument("empty instance");
    if (resolution < 2)
        throw std::invalid_argument("resolution must be at least 2");

    double xmin = agents[0].location.x, xmax = xmin;
    double ymin = agents[0].location.y, ymax = ymin;
    for (const auto& a : agents) {
        xmin = std::min(xmin, a.location.x);
        xmax = std::max(xmax, a.location.x);
        ymin = std::min(ymin, a.location.y);
        ymax = std::max(ymax, a.location.y);
    }
    xmin -= bounding_margin;
    xmax += bounding_margin;
    ymin -= bounding_margin;
    ymax += bounding_margin;

    const auto scan = [&](double x0, double y0, double x1, double y1,
                          Point& best, double& best_cost) -> Point {
        const double dx = (x1 - x0) / (resolution - 1);
        const double dy = (y1 - y0) / (resolution - 1);
        for (int i = 0; i < resolution; ++i) {
            for (int j = 0; j < resolution; ++j) {
                const Point p{x0 + i * dx, y0 + j * dy};
                double sum = 0.0;
                for (const auto& a : agents) sum += individual_cost(p, a);
                const double cost = sum / static_cast<double>(agents.size());
                if (cost < best_cost) {
                    best_cost = cost;
                    best = p;
                }
            }
        }
        return Point{dx, dy};
    };

    GridResult result;
    double best_cost = std::numeric_limits<double>::infinity();
    Point best{xmin, ymin};
    const Point coarse_cell = scan(xmin, ymin, xmax, ymax, best, best_cost);
    result.coarse_cell_diagonal = std::hypot(coarse_cell.x, coarse_cell.y);

    // Refine around the coarse argmin; a window of +-1.5 coarse cells
    // covers the cell containing the coarse-stage near-minimizer.
    const double wx = 1.5 * coarse_cell.x;
    const double wy = 1.5 * coarse_cell.y;
    const Point fine_cell =
        scan(best.x - wx, best.y - wy, best.x + wx, best.y + wy, best, best_cost);
    result.cell_diagonal = std::hypot(fine_cell.x, fine_cell.y);
    result.location = best;
    result.cost = best_cost;
    return result;
}

}  // namespace flp
