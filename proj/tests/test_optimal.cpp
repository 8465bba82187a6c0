#include "flp/optimal.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace flp;

namespace {

double mean_weight(const std::vector<Agent>& agents) {
    double sum = 0.0;
    for (const auto& a : agents) sum += a.weight;
    return sum / static_cast<double>(agents.size());
}

}  // namespace

TEST_CASE("single agent is its own optimum") {
    const std::vector<Agent> agents{make_agent({3, 7}, 2.5)};
    const OptimalResult r = geometric_median_iterative(agents);
    CHECK(r.converged);
    CHECK(r.location == Point{3, 7});
    CHECK(r.cost == 0.0);
}

TEST_CASE("trade-off instance optimum sits on the heavy agent") {
    const auto inst = flp_test::tradeoff_instance();
    const OptimalResult r = geometric_median_iterative(inst.agents);
    CHECK(r.converged);
    CHECK(r.location == Point{0, 1});  // anchor-certified, returned exactly
    CHECK(r.cost == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("collinear pair: cost is well-defined, location is not unique") {
    const std::vector<Agent> agents{make_agent({0, 0}, 1.0), make_agent({2, 0}, 1.0)};
    const OptimalResult r = geometric_median_iterative(agents);
    CHECK(r.converged);
    CHECK(r.cost == doctest::Approx(1.0).epsilon(1e-9));
    const GridResult g = geometric_median_grid(agents, 1.0, 256);
    CHECK(g.cost == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid oracle on the trade-off instance") {
    const auto inst = flp_test::tradeoff_instance();
    const GridResult g = geometric_median_grid(inst.agents, 0.5, 512);
    const double opt = 2.0 * std::sqrt(2.0) / 3.0;
    CHECK(g.cost >= opt - 1e-12);
    CHECK(g.cost <= opt + g.coarse_cell_diagonal * mean_weight(inst.agents));
}

TEST_CASE("grid oracle on a single agent") {
    const std::vector<Agent> agents{make_agent({1.25, -0.5}, 3.0)};
    const GridResult g = geometric_median_grid(agents, 1.0, 64);
    CHECK(g.cost <= g.cell_diagonal * 3.0);
    CHECK(euclidean_distance(g.location, {1.25, -0.5}) <= g.coarse_cell_diagonal);
}

TEST_CASE("oracle dominance on random instances") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 150; ++i) {
        const Instance inst = flp_test::random_instance(rng, 12, 5.0);
        const OptimalResult it = geometric_median_iterative(inst.agents);
        const GridResult g = geometric_median_grid(inst.agents, 0.5, 96);
        CHECK(it.cost <= g.cost + 1e-9);
        CHECK(g.cost <= it.cost + g.coarse_cell_diagonal * mean_weight(inst.agents));
    }
}

TEST_CASE("first-order optimality at non-anchor solutions") {
    std::mt19937_64 rng(43);
    const SolverConfig config;
    for (int i = 0; i < 200; ++i) {
        const Instance inst = flp_test::random_instance(rng, 10, 5.0);
        const OptimalResult r = geometric_median_iterative(inst.agents, config);
        CHECK(r.converged);
        bool at_anchor = false;
        for (const auto& a : inst.agents)
            at_anchor |= euclidean_distance(r.location, a.location) <= 1e-9;
        if (!at_anchor)
            CHECK(weighted_direction_norm(r.location, inst.agents) <= config.tolerance);
    }
}

TEST_CASE("uniform weight scaling leaves the argmin unchanged") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> scale(0.2, 30.0);
    for (int i = 0; i < 60; ++i) {
        Instance inst = flp_test::random_instance(rng, 8, 5.0);
        const OptimalResult base = geometric_median_iterative(inst.agents);
        const double lambda = scale(rng);
        for (auto& a : inst.agents) a.weight *= lambda;
        const OptimalResult scaled = geometric_median_iterative(inst.agents);
        CHECK(euclidean_distance(base.location, scaled.location) <= 1e-7);
    }
}

TEST_CASE("result cost matches utilitarian cost at the returned location") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 50; ++i) {
        const Instance inst = flp_test::random_instance(rng);
        const OptimalResult r = geometric_median_iterative(inst.agents);
        CHECK(r.cost ==
              doctest::Approx(utilitarian_cost(r.location, inst.agents).total_cost)
                  .epsilon(1e-12));
    }
}

TEST_CASE("solver input validation") {
    CHECK_THROWS_AS(geometric_median_iterative(std::vector<Agent>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(geometric_median_grid(std::vector<Agent>{}, 0.5, 16),
                    std::invalid_argument);
    const std::vector<Agent> one{make_agent({0, 0}, 1.0)};
    CHECK_THROWS_AS(geometric_median_grid(one, 0.5, 1), std::invalid_argument);
}
