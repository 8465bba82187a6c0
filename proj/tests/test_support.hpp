#ifndef FLP_TEST_SUPPORT_HPP
#define FLP_TEST_SUPPORT_HPP

#include "flp/core.hpp"
#include "flp/instances.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace flp_test {

// Three-agent trade-off instance: one agent of weight 4 at (0,1), two of
// weight 1 at (-1,0) and (1,0). Optimal location (0,1), cost 2*sqrt(2)/3.
inline flp::Instance tradeoff_instance() {
    flp::Instance inst;
    inst.agents = {flp::make_agent({0.0, 1.0}, 4.0),
                   flp::make_agent({-1.0, 0.0}, 1.0),
                   flp::make_agent({1.0, 0.0}, 1.0)};
    return inst;
}

struct GridMax {
    double arg{0.0};
    double value{0.0};
};

// Independent 1-D oracle for the closed-form bounds: brute-force
// maximization of the parametric COA ratio over x in (0, upper].
inline GridMax max_coa_ratio(double c, double w_min, double w_max, flp::Mode mode,
                             double step = 1e-4, double upper = 0.0) {
    if (upper <= 0.0)
        upper = std::max(10.0, 2.0 * flp::coa_worst_x(c, w_min, w_max, mode));
    GridMax best{step, flp::coa_ratio(step, c, w_min, w_max, mode)};
    const long cells = static_cast<long>(upper / step);
    for (long i = 2; i <= cells; ++i) {
        const double x = static_cast<double>(i) * step;
        const double r = flp::coa_ratio(x, c, w_min, w_max, mode);
        if (r > best.value) best = GridMax{x, r};
    }
    return best;
}

// Small deterministic instance generator for property tests.
inline flp::Instance random_instance(std::mt19937_64& rng, int max_n = 12,
                                     double coord = 5.0, double w_lo = 1.0,
                                     double w_hi = 10.0) {
    std::uniform_int_distribution<int> size(1, max_n);
    std::uniform_real_distribution<double> pos(-coord, coord);
    std::uniform_real_distribution<double> weight(w_lo, w_hi);
    flp::Instance inst;
    const int n = size(rng);
    for (int i = 0; i < n; ++i)
        inst.agents.push_back(flp::make_agent({pos(rng), pos(rng)}, weight(rng)));
    return inst;
}

}  // namespace flp_test

#endif  // FLP_TEST_SUPPORT_HPP
