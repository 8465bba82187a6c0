#ifndef FLP_OPTIMAL_HPP
#define FLP_OPTIMAL_HPP

#include "flp/core.hpp"

namespace flp {

struct SolverConfig {
    double tolerance{1e-10};       // on the weighted direction-sum norm
    int max_iterations{10000};
    double anchor_epsilon{1e-12};  // coincidence detection radius
};

struct OptimalResult {
    Point location;
    double cost{0.0};
    int iterations{0};
    bool converged{false};
};

/// Norm of sum_i w_i * (f - p_i) / d(f, p_i), skipping agents closer than
/// `skip_radius` to f. This is the (unnormalized) gradient of the weighted
/// distance sum away from agent locations.
double weighted_direction_norm(const Point& f, std::span<const Agent> agents,
                               double skip_radius = 0.0);

/// Weighted geometric median via a Weiszfeld fixed point with anchor
/// handling (Vardi-Zhang step when the iterate sits on an agent location)
/// and a Newton polish when the fixed point stalls above tolerance.
OptimalResult geometric_median_iterative(std::span<const Agent> agents,
                                         const SolverConfig& config = {});

struct GridResult {
    Point location;
    double cost{0.0};
    double cell_diagonal{0.0};         // final effective cell size
    double coarse_cell_diagonal{0.0};  // first-stage cell size
};

/// Exhaustive oracle: evaluates the utilitarian cost on a resolution x
/// resolution lattice over the agents' bounding box expanded by
/// `bounding_margin`, then refines on a second lattice around the coarse
/// argmin. The coarse stage alone guarantees
///   grid cost <= optimal cost + coarse_cell_diagonal * mean weight.
GridResult geometric_median_grid(std::span<const Agent> agents,
                                 double bounding_margin, int resolution);

}  // namespace flp

#endif  // FLP_OPTIMAL_HPP
