#include "flp/mechanisms.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace flp;

TEST_CASE("cm basics") {
    const auto inst = flp_test::tradeoff_instance();
    CHECK(cm(inst.agents).facility == Point{0, 0});

    const std::vector<Agent> one{make_agent({4, -3}, 2.0)};
    CHECK(cm(one).facility == Point{4, -3});

    const std::vector<Agent> two{make_agent({0, 0}, 1.0), make_agent({2, 2}, 1.0)};
    CHECK(cm(two).facility == Point{0, 0});  // even count, lower medians

    CHECK_THROWS_AS(cm(std::vector<Agent>{}), std::invalid_argument);
}

TEST_CASE("gcm with phantom points") {
    const auto inst = flp_test::tradeoff_instance();
    SUBCASE("no phantoms reduces to cm") {
        const auto g = gcm(inst.agents, {});
        CHECK(g.facility == cm(inst.agents).facility);
        CHECK(g.phantom_count == 0);
        CHECK(g.augmented_size == 3);
    }
    SUBCASE("impossibility-pair agents with four phantoms above the top cluster") {
        // y-list {10,10,10,10,20,21,21,21,21}: lower median 20 for both
        // weight assignments.
        std::vector<Agent> a, b;
        for (int i = 0; i < 4; ++i) {
            a.push_back(make_agent({0, 10}, 1.0));
            b.push_back(make_agent({0, 10}, 5.0));
        }
        a.push_back(make_agent({0, 20}, 5.0));
        b.push_back(make_agent({0, 20}, 1.0));
        const std::vector<Point> phantoms(4, Point{0, 21});
        CHECK(gcm(a, phantoms).facility == Point{0, 20});
        CHECK(gcm(b, phantoms).facility == Point{0, 20});
        CHECK(gcm(a, phantoms).augmented_size == 9);
    }
}

TEST_CASE("cmp on the trade-off instance") {
    const auto inst = flp_test::tradeoff_instance();
    SUBCASE("c = 0.7 adds two phantoms and follows the prediction") {
        const auto out = cmp(inst.agents, {0, 1}, 0.7);
        CHECK(out.phantom_count == 2);
        CHECK(out.facility == Point{0, 1});
    }
    SUBCASE("c = 0.5 adds one phantom, output stays at the origin") {
        const auto out = cmp(inst.agents, {0, 1}, 0.5);
        CHECK(out.phantom_count == 1);
        CHECK(out.facility == Point{0, 0});
    }
    SUBCASE("slightly wrong prediction with high confidence") {
        CHECK(cmp(inst.agents, {0, 0.5}, 0.7).facility == Point{0, 0.5});
    }
    SUBCASE("confidence domain") {
        CHECK_THROWS_AS(cmp(inst.agents, {0, 0}, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(cmp(inst.agents, {0, 0}, -0.1), std::invalid_argument);
    }
}

TEST_CASE("phantom count flooring") {
    CHECK(cmp_phantom_count(3, 0.7) == 2);
    CHECK(cmp_phantom_count(10, 0.7) == 7);  // 0.7*10 lands ulps under 7
    CHECK(cmp_phantom_count(3, 2.0 / 3.0) == 2);
    CHECK(cmp_phantom_count(5, 0.0) == 0);
    CHECK(cmp_phantom_count(40, 0.9) == 36);
}

TEST_CASE("c = 0 reduces cmp to cm") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const Instance inst = flp_test::random_instance(rng, 15, 10.0);
        const Point pred{u(rng), u(rng)};
        CHECK(cmp(inst.agents, pred, 0.0).facility == cm(inst.agents).facility);
    }
}

TEST_CASE("weights never influence placement") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> w(0.01, 100.0);
    for (int i = 0; i < 200; ++i) {
        Instance inst = flp_test::random_instance(rng, 12, 10.0);
        const Point base = cmp(inst.agents, {1, -1}, 0.5).facility;
        for (auto& a : inst.agents) a.weight = w(rng);
        CHECK(cmp(inst.agents, {1, -1}, 0.5).facility == base);
        CHECK(cm(inst.agents).facility == cm(inst.agents).facility);
    }
}

TEST_CASE("unanimity") {
    std::vector<Agent> agents;
    for (int i = 0; i < 6; ++i) agents.push_back(make_agent({2.5, -3.5}, i + 1.0));
    CHECK(cmp(agents, {2.5, -3.5}, 0.6).facility == Point{2.5, -3.5});
    CHECK(cm(agents).facility == Point{2.5, -3.5});
}

TEST_CASE("phantom insertion order does not matter") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = flp_test::random_instance(rng, 9, 10.0);
        std::vector<Point> phantoms;
        for (int k = 0; k < 4; ++k) phantoms.push_back({u(rng), u(rng)});
        const Point forward = gcm(inst.agents, phantoms).facility;
        std::reverse(phantoms.begin(), phantoms.end());
        CHECK(gcm(inst.agents, phantoms).facility == forward);
    }
}
