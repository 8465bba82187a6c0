#ifndef FLP_INSTANCES_HPP
#define FLP_INSTANCES_HPP

#include "flp/core.hpp"

#include <utility>

namespace flp {

enum class Mode { consistency, robustness };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Closed-form consistency and robustness values for (c, w_min, w_max).
struct BoundPair {
    double c{0.0};
    double w_min{1.0};
    double w_max{1.0};
    double consistency{1.0};
    double robustness{1.0};
};

double consistency_bound(double c, double w_min, double w_max);
double robustness_bound(double c, double w_min, double w_max);
BoundPair bound_pair(double c, double w_min, double w_max);

/// Approximation ratio of the clusters-and-opt-on-axes family as a
/// function of the cluster offset x >= 0.
double coa_ratio(double x, double c, double w_min, double w_max, Mode mode);

/// The maximizing cluster offset of coa_ratio.
double coa_worst_x(double c, double w_min, double w_max, Mode mode);

struct CoaInstance {
    Instance instance;
    double worst_x{0.0};
    Mode mode{Mode::consistency};
    double expected_ratio{1.0};
};

/// Worst-case generator. Consistency mode: (1-c)n/2 agents at (0,1) with
/// w_max, (1+c)n/4 at each of (+-x*,0) with w_min, accurate prediction
/// (0,1). Robustness mode: (1+c)n/2 at (0,1), (1-c)n/4 per side, wrong
/// prediction (0,0). Requires all group sizes integral.
CoaInstance coa_worst_instance(std::size_t n, double c, double w_min,
                               double w_max, Mode mode);

/// Smallest n for which every coa_worst_instance group size is integral.
std::size_t smallest_coa_n(double c);

/// Empirically checks that moving any single agent's weight into the open
/// interval (w_min, w_max) strictly decreases the measured approximation
/// ratio. Vacuously true when w_min = w_max.
bool extremize_coa_weights(const CoaInstance& coa);

bool is_coa_instance(const Instance& instance, double c);
bool is_ca_instance(const Instance& instance, double c);
bool is_oa_instance(const Instance& instance, double c);

/// The two five-agent instances behind the 1-consistency impossibility
/// argument: A = {4x((0,10),w=1), ((0,20),w=5)}, B with weights swapped.
std::pair<Instance, Instance> impossibility_instances();

/// Two-cluster generalization: n-1 agents at (0,10) with w_max and one at
/// (0,20) with w_min.
Instance impossibility_scaled(std::size_t n, double w_min, double w_max);

/// (n-1) * w_max / w_min: the robustness forced on any 1-consistent
/// GCM-representable mechanism on the scaled two-cluster pair.
double impossibility_ratio(std::size_t n, double w_min, double w_max);

}  // namespace flp

#endif  // FLP_INSTANCES_HPP
