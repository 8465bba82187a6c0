#include "flp/instances.hpp"

#include "flp/mechanisms.hpp"
#include "flp/optimal.hpp"

#include <algorithm>
#include <cmath>

namespace flp {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kStructTol = 1e-9;

void check_bound_domain(double c, double w_min, double w_max) {
    if (!(c >= 0.0 && c < 1.0))
        throw std::invalid_argument("invalid confidence");
    if (!(w_min > 0.0) || !(w_max >= w_min))
        throw std::invalid_argument("weights must satisfy 0 < w_min <= w_max");
}

bool at_origin(const Point& p) {
    return std::abs(p.x) <= kExactTol && std::abs(p.y) <= kExactTol;
}

// Integral group size, rejecting values that are not within rounding
// noise of an integer.
std::size_t integral_count(double value, std::size_t n) {
    const double rounded = std::nearbyint(value);
    if (std::abs(value - rounded) > 1e-9 * std::max<double>(1.0, static_cast<double>(n)))
        throw std::invalid_argument("n incompatible with c");
    return static_cast<std::size_t>(rounded);
}

double measured_ratio(const Instance& inst) {
    const MechanismOutput out =
        cmp(inst.agents, *inst.prediction, *inst.confidence);
    const double mech = utilitarian_cost(out.facility, inst.agents).total_cost;
    const double opt = geometric_median_iterative(inst.agents).cost;
    return approximation_ratio(mech, opt);
}

}  // namespace

const char* to_string(Mode mode) {
    return mode == Mode::consistency ? "consistency" : "robustness";
}

Mode mode_from_string(const std::string& name) {
    if (name == "consistency") return Mode::consistency;
    if (name == "robustness") return Mode::robustness;
    throw std::invalid_argument("unknown mode: " + name);
}

double consistency_bound(double c, double w_min, double w_max) {
    check_bound_domain(c, w_min, w_max);
    const double a = (1.0 + c) * w_min;
    const double b = (1.0 - c) * w_max;
    return std::sqrt(a * a + b * b) / a;
}

double robustness_bound(double c, double w_min, double w_max) {
    check_bound_domain(c, w_min, w_max);
    const double a = (1.0 - c) * w_min;
    const double b = (1.0 + c) * w_max;
    return std::sqrt(a * a + b * b) / a;
}

BoundPair bound_pair(double c, double w_min, double w_max) {
    return BoundPair{c, w_min, w_max, consistency_bound(c, w_min, w_max),
                     robustness_bound(c, w_min, w_max)};
}

double coa_ratio(double x, double c, double w_min, double w_max, Mode mode) {
    check_bound_domain(c, w_min, w_max);
    if (!(x >= 0.0))
        throw std::invalid_argument("x must be nonnegative");
    const double low = mode == Mode::consistency ? (1.0 + c) : (1.0 - c);
    const double high = mode == Mode::consistency ? (1.0 - c) : (1.0 + c);
    return (low * x * w_min + high * w_max) / (low * w_min * std::sqrt(1.0 + x * x));
}

double coa_worst_x(double c, double w_min, double w_max, Mode mode) {
    check_bound_domain(c, w_min, w_max);
    return mode == Mode::consistency
               ? (1.0 + c) * w_min / ((1.0 - c) * w_max)
               : (1.0 - c) * w_min / ((1.0 + c) * w_max);
}

CoaInstance coa_worst_instance(std::size_t n, double c, double w_min,
                               double w_max, Mode mode) {
    check_bound_domain(c, w_min, w_max);
    if (n == 0)
        throw std::invalid_argument("empty instance");
    const double dn = static_cast<double>(n);
    const double top_frac = mode == Mode::consistency ? (1.0 - c) : (1.0 + c);
    const double side_frac = mode == Mode::consistency ? (1.0 + c) : (1.0 - c);
    const std::size_t top = integral_count(top_frac * dn / 2.0, n);
    const std::size_t per_side = integral_count(side_frac * dn / 4.0, n);
    if (top + 2 * per_side != n || top == 0 || per_side == 0)
        throw std::invalid_argument("n incompatible with c");

    CoaInstance coa;
    coa.mode = mode;
    coa.worst_x = coa_worst_x(c, w_min, w_max, mode);
    coa.expected_ratio = mode == Mode::consistency
                             ? consistency_bound(c, w_min, w_max)
                             : robustness_bound(c, w_min, w_max);

    Instance& inst = coa.instance;
    inst.agents.reserve(n);
    for (std::size_t i = 0; i < top; ++i)
        inst.agents.push_back(make_agent(Point{0.0, 1.0}, w_max));
    for (std::size_t i = 0; i < per_side; ++i) {
        inst.agents.push_back(make_agent(Point{coa.worst_x, 0.0}, w_min));
        inst.agents.push_back(make_agent(Point{-coa.worst_x, 0.0}, w_min));
    }
    inst.prediction = mode == Mode::consistency ? Point{0.0, 1.0} : Point{0.0, 0.0};
    inst.confidence = c;

    const MechanismOutput out = cmp(inst.agents, *inst.prediction, c);
    if (!at_origin(out.facility))
        throw std::logic_error("COA generator produced an unsound instance");
    return coa;
}

std::size_t smallest_coa_n(double c) {
    for (std::size_t n = 2; n <= 100000; ++n) {
        try {
            (void)coa_worst_instance(n, c, 1.0, 1.0, Mode::consistency);
            (void)coa_worst_instance(n, c, 1.0, 1.0, Mode::robustness);
            return n;
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::invalid_argument("no compatible n for this c");
}

bool extremize_coa_weights(const CoaInstance& coa) {
    validate_instance(coa.instance);
    if (!coa.instance.prediction || !coa.instance.confidence)
        throw std::invalid_argument("COA instance needs prediction and confidence");
    double w_min = coa.instance.agents[0].weight;
    double w_max = w_min;
    for (const auto& a : coa.instance.agents) {
        w_min = std::min(w_min, a.weight);
        w_max = std::max(w_max, a.weight);
    }
    if (w_max - w_min <= kStructTol)
        return true;  // empty interior, nothing to perturb

    const double base = measured_ratio(coa.instance);
    for (std::size_t i = 0; i < coa.instance.agents.size(); ++i) {
        for (double t : {0.25, 0.5, 0.75}) {
            Instance perturbed = coa.instance;
            perturbed.agents[i].weight = w_min + t * (w_max - w_min);
            if (measured_ratio(perturbed) >= base - 1e-9)
                return false;
        }
    }
    return true;
}

bool is_coa_instance(const Instance& instance, double c) {
    if (instance.agents.empty() || !instance.prediction) return false;
    if (!(c >= 0.0 && c < 1.0)) return false;

    double w_min = instance.agents[0].weight;
    double w_max = w_min;
    for (const auto& a : instance.agents) {
        w_min = std::min(w_min, a.weight);
        w_max = std::max(w_max, a.weight);
    }

    bool have_x = false;
    double x = 0.0;
    std::size_t top = 0;
    for (const auto& a : instance.agents) {
        const Point& p = a.location;
        if (std::abs(p.x) <= kStructTol && std::abs(p.y - 1.0) <= kStructTol) {
            ++top;
            if (std::abs(a.weight - w_max) > kStructTol * w_max) return false;
            continue;
        }
        if (std::abs(p.y) > kStructTol) return false;  // off both patterns
        const double ax = std::abs(p.x);
        if (!have_x) {
            x = ax;
            have_x = true;
        } else if (std::abs(ax - x) > kStructTol) {
            return false;  // x-axis agents must share one offset
        }
        if (std::abs(a.weight - w_min) > kStructTol * w_min) return false;
    }
    if (top == 0) return false;

    if (!at_origin(cmp(instance.agents, *instance.prediction, c).facility))
        return false;

    const OptimalResult opt = geometric_median_iterative(instance.agents);
    return euclidean_distance(opt.location, Point{0.0, 1.0}) <= 1e-6;
}

bool is_oa_instance(const Instance& instance, double c) {
    if (instance.agents.empty() || !instance.prediction) return false;
    if (!(c >= 0.0 && c < 1.0)) return false;
    if (!at_origin(cmp(instance.agents, *instance.prediction, c).facility))
        return false;
    const OptimalResult opt = geometric_median_iterative(instance.agents);
    if (std::abs(opt.location.x) > 1e-6 || !(opt.location.y > kStructTol))
        return false;
    for (const auto& a : instance.agents) {
        if (std::abs(a.location.x) > kStructTol && std::abs(a.location.y) > kStructTol)
            return false;
    }
    return true;
}

bool is_ca_instance(const Instance& instance, double c) {
    if (instance.agents.empty() || !instance.prediction) return false;
    if (!(c >= 0.0 && c < 1.0)) return false;

    const Point pred = *instance.prediction;
    const MechanismOutput base = cmp(instance.agents, pred, c);
    if (!at_origin(base.facility)) return false;

    const OptimalResult opt = geometric_median_iterative(instance.agents);
    const Point o = opt.location;
    if (!(o.x > kStructTol) || !(o.y >= o.x - kStructTol)) return false;

    // No move towards opt, sampled over a fixed epsilon grid. Agents
    // already sitting at o(P) cannot move and are exempt.
    for (std::size_t i = 0; i < instance.agents.size(); ++i) {
        const Point& p = instance.agents[i].location;
        if (euclidean_distance(p, o) <= kStructTol) continue;
        for (int k = 1; k <= 10; ++k) {
            const double eps = 0.1 * k;
            Instance moved = instance;
            moved.agents[i].location =
                Point{p.x + eps * (o.x - p.x), p.y + eps * (o.y - p.y)};
            const MechanismOutput shifted = cmp(moved.agents, pred, c);
            if (euclidean_distance(shifted.facility, base.facility) <= kExactTol)
                return false;
        }
    }

    // Cluster structure.
    bool have_x1 = false, have_x2 = false, have_y1 = false, have_y2 = false;
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    std::size_t left = 0, right = 0, bottom = 0, topc = 0, at_opt = 0;
    for (const auto& a : instance.agents) {
        const Point& p = a.location;
        if (euclidean_distance(p, o) <= kStructTol) {
            ++at_opt;
            continue;
        }
        if (at_origin(p)) continue;  // degenerate member of either axis cluster
        if (std::abs(p.y) <= kStructTol) {
            if (p.x < 0.0) {
                if (have_x1 && std::abs(-p.x - x1) > kStructTol) return false;
                x1 = -p.x;
                have_x1 = true;
                ++left;
            } else {
                if (have_x2 && std::abs(p.x - x2) > kStructTol) return false;
                x2 = p.x;
                have_x2 = true;
                ++right;
            }
            continue;
        }
        if (std::abs(p.x) <= kStructTol) {
            if (p.y < 0.0) {
                if (have_y1 && std::abs(-p.y - y1) > kStructTol) return false;
                y1 = -p.y;
                have_y1 = true;
                ++bottom;
            } else {
                if (have_y2 && std::abs(p.y - y2) > kStructTol) return false;
                y2 = p.y;
                have_y2 = true;
                ++topc;
            }
            continue;
        }
        return false;  // off-axis, off-opt point
    }
    if (!(left < right + at_opt)) return false;
    if (!(bottom < topc + at_opt)) return false;
    if (have_x1 && have_x2 && std::abs((o.x + x1) - (x2 - o.x)) > 1e-6) return false;
    if (have_y1 && have_y2 && std::abs((o.y + y1) - (y2 - o.y)) > 1e-6) return false;
    return true;
}

std::pair<Instance, Instance> impossibility_instances() {
    Instance a, b;
    for (int i = 0; i < 4; ++i) {
        a.agents.push_back(make_agent(Point{0.0, 10.0}, 1.0));
        b.agents.push_back(make_agent(Point{0.0, 10.0}, 5.0));
    }
    a.agents.push_back(make_agent(Point{0.0, 20.0}, 5.0));
    b.agents.push_back(make_agent(Point{0.0, 20.0}, 1.0));
    return {a, b};
}

Instance impossibility_scaled(std::size_t n, double w_min, double w_max) {
    if (n < 2)
        throw std::invalid_argument("n must be at least 2");
    if (!(w_min > 0.0) || !(w_max >= w_min))
        throw std::invalid_argument("weights must satisfy 0 < w_min <= w_max");
    Instance inst;
    for (std::size_t i = 0; i + 1 < n; ++i)
        inst.agents.push_back(make_agent(Point{0.0, 10.0}, w_max));
    inst.agents.push_back(make_agent(Point{0.0, 20.0}, w_min));
    return inst;
}

double impossibility_ratio(std::size_t n, double w_min, double w_max) {
    if (n < 2)
        throw std::invalid_argument("n must be at least 2");
    if (!(w_min > 0.0) || !(w_max > 0.0))
        throw std::invalid_argument("weights must be positive");
    return static_cast<double>(n - 1) * w_max / w_min;
}

}  // namespace flp
