#ifndef FLP_ANALYSIS_HPP
#define FLP_ANALYSIS_HPP

#include "flp/core.hpp"
#include "flp/instances.hpp"

#include <cstdint>
#include <string>

namespace flp {

struct RatioReport {
    std::string instance_id;
    Point facility;
    Point optimal;
    double mech_cost{0.0};
    double opt_cost{0.0};
    double ratio{1.0};
    std::optional<Point> fixed_prediction;  // nullopt = accurate mode
    Point prediction_used;
};

/// Runs cmp on the instance and measures its approximation ratio against
/// the iterative optimal. Accurate mode (no fixed prediction) sets the
/// prediction to the iterative optimum first. With cross_check, instances
/// with n <= 12 are verified against the brute-force grid oracle.
RatioReport evaluate(const Instance& instance, double c,
                     const std::optional<Point>& fixed_prediction,
                     bool cross_check = true);

enum class MechanismKind {
    cmp,
    weighted_mean,  // non-strategyproof foil for the fuzzer
};

Point mechanism_facility(MechanismKind kind, std::span<const Agent> agents,
                         const Point& prediction, double c);

struct FuzzViolation {
    Instance instance;
    std::size_t agent_index{0};
    Point misreport;
    double gain{0.0};
};

struct FuzzReport {
    int trials{0};
    std::vector<FuzzViolation> violations;  // capped at 64 stored entries
    std::size_t violation_count{0};
    double max_gain{0.0};
};

/// Random-instance strategyproofness fuzzer: per trial, one random agent
/// tries every misreport on a 9x9 grid over the coordinate box plus 32
/// random points; any individual-cost decrease beyond tolerance is a
/// violation. Deterministic given the seed.
FuzzReport fuzz_strategyproofness(MechanismKind kind, int trials,
                                  std::uint64_t seed, double tolerance = 1e-9);

struct SearchConfig {
    std::uint64_t seed{0};
    int restarts{10};
    int steps_per_restart{2000};
    std::pair<int, int> n_range{3, 9};
    std::pair<double, double> coordinate_box{-5.0, 5.0};
    std::pair<double, double> weight_box{1.0, 1.0};
    double c{0.0};
    Mode mode{Mode::consistency};
};

struct SearchResult {
    Instance best_instance;
    RatioReport best_report;
    double bound{0.0};  // closed-form bound for (c, weight_box)
};

/// Random restarts plus coordinate-wise hill climbing on agent positions
/// and weights (and the prediction, in robustness mode), maximizing the
/// approximation ratio. Instance sizes are restricted to n with c*n
/// integral so the closed-form bound applies exactly. An optional seed
/// instance primes the first restart.
SearchResult adversarial_search(const SearchConfig& config,
                                const std::optional<Instance>& seed_instance = {});

/// Full cross product of fixed predictions and confidence values.
std::vector<RatioReport> tradeoff_sweep(const Instance& instance,
                                        std::span<const Point> predictions,
                                        std::span<const double> c_grid);

/// Closed-form bound table over (c, w_max/w_min) with w_min = 1.
std::vector<BoundPair> frontier(std::span<const double> c_grid,
                                std::span<const double> weight_ratio_grid);

}  // namespace flp

#endif  // FLP_ANALYSIS_HPP
