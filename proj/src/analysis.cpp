#include "flp/analysis.hpp"

#include "flp/mechanisms.hpp"
#include "flp/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace flp {

namespace {

// Thin deterministic wrapper; all draws go through explicit helpers so a
// report is reproducible byte-for-byte from its seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

std::uint64_t unit_seed(std::uint64_t seed, std::uint64_t unit) {
    // splitmix64 of (seed, unit) so work units are independent streams
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (unit + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double mean_weight(std::span<const Agent> agents) {
    double sum = 0.0;
    for (const auto& a : agents) sum += a.weight;
    return sum / static_cast<double>(agents.size());
}

}  // namespace

RatioReport evaluate(const Instance& instance, double c,
                     const std::optional<Point>& fixed_prediction,
                     bool cross_check) {
    validate_instance(instance);

    const OptimalResult opt = geometric_median_iterative(instance.agents);
    if (cross_check && instance.n() <= 12) {
        const GridResult grid = geometric_median_grid(instance.agents, 0.5, 96);
        const double slack =
            grid.coarse_cell_diagonal * mean_weight(instance.agents) + 1e-9;
        if (std::abs(grid.cost - opt.cost) > slack)
            throw std::invalid_argument("optimal solver failed");
    }

    RatioReport report;
    report.fixed_prediction = fixed_prediction;
    report.prediction_used = fixed_prediction.value_or(opt.location);
    report.optimal = opt.location;
    report.opt_cost = opt.cost;

    const MechanismOutput out = cmp(instance.agents, report.prediction_used, c);
    report.facility = out.facility;
    report.mech_cost = utilitarian_cost(out.facility, instance.agents).total_cost;
    report.ratio = approximation_ratio(report.mech_cost, report.opt_cost);
    return report;
}

Point mechanism_facility(MechanismKind kind, std::span<const Agent> agents,
                         const Point& prediction, double c) {
    switch (kind) {
        case MechanismKind::cmp:
            return cmp(agents, prediction, c).facility;
        case MechanismKind::weighted_mean: {
            if (agents.empty())
                throw std::invalid_argument("empty instance");
            double wsum = 0.0;
            Point p{0.0, 0.0};
            for (const auto& a : agents) {
                wsum += a.weight;
                p.x += a.weight * a.location.x;
                p.y += a.weight * a.location.y;
            }
            return Point{p.x / wsum, p.y / wsum};
        }
    }
    throw std::invalid_argument("unknown mechanism kind");
}

FuzzReport fuzz_strategyproofness(MechanismKind kind, int trials,
                                  std::uint64_t seed, double tolerance) {
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");

    constexpr double kLo = -10.0, kHi = 10.0;
    constexpr int kGrid = 9;
    constexpr int kRandomMisreports = 32;
    const double c_values[] = {0.0, 0.25, 0.5, 0.75};

    FuzzReport report;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(unit_seed(seed, static_cast<std::uint64_t>(trial)));
        Instance inst;
        const int n = rng.uniform_int(1, 15);
        inst.agents.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const Point loc{rng.uniform(kLo, kHi), rng.uniform(kLo, kHi)};
            inst.agents.push_back(make_agent(loc, rng.uniform(1.0, 10.0)));
        }
        const double c = c_values[rng.uniform_int(0, 3)];
        const Point prediction{rng.uniform(kLo, kHi), rng.uniform(kLo, kHi)};
        inst.prediction = prediction;
        inst.confidence = c;

        const std::size_t victim =
            static_cast<std::size_t>(rng.uniform_int(0, n - 1));
        const Agent truth = inst.agents[victim];
        const Point honest = mechanism_facility(kind, inst.agents, prediction, c);
        const double honest_cost = individual_cost(honest, truth);

        std::vector<Point> misreports;
        misreports.reserve(kGrid * kGrid + kRandomMisreports);
        for (int i = 0; i < kGrid; ++i)
            for (int j = 0; j < kGrid; ++j)
                misreports.push_back(Point{kLo + (kHi - kLo) * i / (kGrid - 1),
                                           kLo + (kHi - kLo) * j / (kGrid - 1)});
        for (int i = 0; i < kRandomMisreports; ++i)
            misreports.push_back(Point{rng.uniform(kLo, kHi), rng.uniform(kLo, kHi)});

        std::vector<Agent> reports = inst.agents;
        for (const Point& lie : misreports) {
            reports[victim].location = lie;
            const Point shifted = mechanism_facility(kind, reports, prediction, c);
            const double gain = honest_cost - individual_cost(shifted, truth);
            if (gain > tolerance) {
                ++report.violation_count;
                report.max_gain = std::max(report.max_gain, gain);
                if (report.violations.size() < 64)
                    report.violations.push_back(
                        FuzzViolation{inst, victim, lie, gain});
            }
        }
    }
    return report;
}

namespace {

struct SearchState {
    Instance instance;  // prediction field used in robustness mode
    double ratio{0.0};
};

std::vector<int> admissible_sizes(const SearchConfig& config) {
    std::vector<int> sizes;
    for (int n = config.n_range.first; n <= config.n_range.second; ++n) {
        if (n < 1) continue;
        const double cn = config.c * n;
        if (std::abs(cn - std::nearbyint(cn)) <= 1e-9) sizes.push_back(n);
    }
    if (sizes.empty())
        throw std::invalid_argument("no instance size in range with integral c*n");
    return sizes;
}

// Ratio of CMP on the state under the mode's prediction rule; candidates
// whose evaluation fails (e.g. non-converged optimum) are rejected.
bool score(SearchState& state, const SearchConfig& config) {
    try {
        const std::optional<Point> fixed =
            config.mode == Mode::robustness ? state.instance.prediction
                                            : std::optional<Point>{};
        state.ratio = evaluate(state.instance, config.c, fixed, false).ratio;
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

SearchState random_state(Rng& rng, const SearchConfig& config,
                         std::span<const int> sizes) {
    SearchState state;
    const int n = sizes[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(sizes.size()) - 1))];
    const auto [lo, hi] = config.coordinate_box;
    const auto [wlo, whi] = config.weight_box;
    for (int i = 0; i < n; ++i) {
        const Point loc{rng.uniform(lo, hi), rng.uniform(lo, hi)};
        state.instance.agents.push_back(make_agent(loc, rng.uniform(wlo, whi)));
    }
    state.instance.confidence = config.c;
    state.instance.prediction = Point{rng.uniform(lo, hi), rng.uniform(lo, hi)};
    return state;
}

}  // namespace

SearchResult adversarial_search(const SearchConfig& config,
                                const std::optional<Instance>& seed_instance) {
    if (config.restarts < 1 || config.steps_per_restart < 0)
        throw std::invalid_argument("invalid search config");
    if (!(config.weight_box.first > 0.0) ||
        !(config.weight_box.second >= config.weight_box.first))
        throw std::invalid_argument("weight box must lie within (0, inf)");
    if (!(config.coordinate_box.second > config.coordinate_box.first))
        throw std::invalid_argument("coordinate box must be nonempty");
    const std::vector<int> sizes = admissible_sizes(config);

    const auto [lo, hi] = config.coordinate_box;
    const auto [wlo, whi] = config.weight_box;
    const double coord_width = hi - lo;
    const bool vary_weights = whi - wlo > 0.0;
    const bool vary_prediction = config.mode == Mode::robustness;

    SearchState best;
    bool have_best = false;

    for (int restart = 0; restart < config.restarts; ++restart) {
        Rng rng(unit_seed(config.seed, static_cast<std::uint64_t>(restart)));
        SearchState state;
        if (restart == 0 && seed_instance) {
            state.instance = *seed_instance;
            validate_instance(state.instance);
            if (!state.instance.prediction)
                state.instance.prediction = Point{0.0, 0.0};
        } else {
            state = random_state(rng, config, sizes);
        }
        if (!score(state, config)) continue;

        double radius = 0.1 * coord_width;
        int failures = 0;
        const std::size_t n = state.instance.n();
        for (int step = 0; step < config.steps_per_restart; ++step) {
            SearchState cand = state;
            // coordinate-wise move: one agent field, or the prediction
            const int fields = static_cast<int>(n) * (vary_weights ? 3 : 2) +
                               (vary_prediction ? 2 : 0);
            const int pick = rng.uniform_int(0, fields - 1);
            const double delta = rng.uniform(-radius, radius);
            const int per_agent = vary_weights ? 3 : 2;
            if (pick < static_cast<int>(n) * per_agent) {
                Agent& a = cand.instance.agents[static_cast<std::size_t>(pick / per_agent)];
                switch (pick % per_agent) {
                    case 0:
                        a.location.x = std::clamp(a.location.x + delta, lo, hi);
                        break;
                    case 1:
                        a.location.y = std::clamp(a.location.y + delta, lo, hi);
                        break;
                    default:
                        a.weight = std::clamp(
                            a.weight + delta * (whi - wlo) / coord_width, wlo, whi);
                        break;
                }
            } else {
                Point& p = *cand.instance.prediction;
                if ((pick - static_cast<int>(n) * per_agent) == 0)
                    p.x = std::clamp(p.x + delta, lo, hi);
                else
                    p.y = std::clamp(p.y + delta, lo, hi);
            }
            if (score(cand, config) && cand.ratio > state.ratio) {
                state = cand;
                failures = 0;
            } else if (++failures >= 20) {
                radius = std::max(radius * 0.5, 1e-6 * coord_width);
                failures = 0;
            }
        }
        if (!have_best || state.ratio > best.ratio) {
            best = state;
            have_best = true;
        }
    }
    if (!have_best)
        throw std::invalid_argument("search produced no scorable instance");

    SearchResult result;
    result.best_instance = best.instance;
    const std::optional<Point> fixed =
        config.mode == Mode::robustness ? best.instance.prediction
                                        : std::optional<Point>{};
    result.best_report = evaluate(best.instance, config.c, fixed, false);
    result.bound = config.mode == Mode::consistency
                       ? consistency_bound(config.c, wlo, whi)
                       : robustness_bound(config.c, wlo, whi);
    return result;
}

std::vector<RatioReport> tradeoff_sweep(const Instance& instance,
                                        std::span<const Point> predictions,
                                        std::span<const double> c_grid) {
    if (predictions.empty() || c_grid.empty())
        throw std::invalid_argument("empty sweep grid");
    std::vector<RatioReport> table;
    table.reserve(predictions.size() * c_grid.size());
    for (const double c : c_grid) {
        for (const Point& pred : predictions) {
            RatioReport report = evaluate(instance, c, pred);
            report.instance_id = "c=" + std::to_string(c) + ";pred=(" +
                                 std::to_string(pred.x) + "," +
                                 std::to_string(pred.y) + ")";
            table.push_back(std::move(report));
        }
    }
    return table;
}

std::vector<BoundPair> frontier(std::span<const double> c_grid,
                                std::span<const double> weight_ratio_grid) {
    if (c_grid.empty() || weight_ratio_grid.empty())
        throw std::invalid_argument("empty frontier grid");
    std::vector<BoundPair> table;
    table.reserve(c_grid.size() * weight_ratio_grid.size());
    for (const double c : c_grid)
        for (const double ratio : weight_ratio_grid)
            table.push_back(bound_pair(c, 1.0, ratio));
    return table;
}

}  // namespace flp
