#include <doctest.h>

#include <srti/generator.hpp>
#include <srti/io.hpp>
#include <srti/personalization.hpp>

#include "fixtures.hpp"

using namespace srti;

TEST_CASE("edge probability extremes") {
    SUBCASE("p = 1 ranks everyone") {
        const Instance inst = generate_srti(10, 1.0, 3);
        for (Agent a = 0; a < inst.size(); ++a)
            CHECK(static_cast<int>(inst.acceptable(a).size()) == inst.size() - 1);
        CHECK(completeness_degree(inst) == doctest::Approx(100.0));
    }
    SUBCASE("p = 0 ranks nobody") {
        const Instance inst = generate_srti(10, 0.0, 3);
        for (Agent a = 0; a < inst.size(); ++a) CHECK(inst.acceptable(a).empty());
    }
    SUBCASE("invalid probability") {
        CHECK_THROWS_AS(generate_srti(5, 1.5, 1), std::invalid_argument);
        CHECK_THROWS_AS(generate_srti(0, 0.5, 1), std::invalid_argument);
    }
}

TEST_CASE("generated structure") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = generate_srti(12, 0.4, seed);
        SUBCASE("acceptability is symmetric") {}
        for (Agent x = 0; x < inst.size(); ++x)
            for (Agent y = 0; y < inst.size(); ++y)
                if (x != y) CHECK(inst.accepts(x, y) == inst.accepts(y, x));
        // strict permutations: every tier is a singleton
        for (Agent x = 0; x < inst.size(); ++x)
            for (const auto& tier : inst.order(x).tiers) CHECK(tier.size() == 1);
    }
    SUBCASE("tie injection produces some wider tiers") {
        const Instance inst = generate_srti(12, 0.9, 5, /*tie_prob=*/0.5);
        int wide = 0;
        for (Agent x = 0; x < inst.size(); ++x)
            for (const auto& tier : inst.order(x).tiers)
                if (tier.size() > 1) ++wide;
        CHECK(wide > 0);
    }
}

TEST_CASE("determinism per seed") {
    const Instance a = generate_srti(15, 0.3, 77);
    const Instance b = generate_srti(15, 0.3, 77);
    CHECK(a == b);
    CHECK_FALSE(a == generate_srti(15, 0.3, 78));

    CriteriaGenOptions opts;
    opts.count = 4;
    CHECK(attach_random_criteria(a, opts, 5) == attach_random_criteria(b, opts, 5));
    CHECK(serialize_instance(attach_random_criteria(a, opts, 5)) ==
          serialize_instance(attach_random_criteria(b, opts, 5)));
}

TEST_CASE("mean completeness tracks the edge probability") {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        total += completeness_degree(generate_srti(40, 0.25, seed));
    const double mean = total / 20.0;
    CHECK(mean > 20.0);
    CHECK(mean < 30.0);
}

TEST_CASE("attaching criteria") {
    const Instance base = generate_srti(8, 0.5, 11);
    SUBCASE("zero criteria is the identity") {
        CHECK(attach_random_criteria(base, CriteriaGenOptions{.count = 0}, 1) == base);
    }
    SUBCASE("profiles respect sizes and ranges") {
        CriteriaGenOptions opts;
        opts.count = 3;
        opts.choice_sizes = {2, 3, 4};
        opts.weight_min = 1;
        opts.weight_max = 5;
        const Instance inst = attach_random_criteria(base, opts, 9);
        REQUIRE(inst.has_criteria());
        CHECK(inst.criteria().count() == 3);
        for (Agent a = 0; a < inst.size(); ++a) {
            for (int i = 0; i < 3; ++i) {
                CHECK(inst.profile(a).choices[i] >= 1);
                CHECK(inst.profile(a).choices[i] <= opts.choice_sizes[i]);
                CHECK(inst.profile(a).weights[i] >= 1);
                CHECK(inst.profile(a).weights[i] <= 5);
            }
        }
    }
    SUBCASE("personalization grows completeness toward the blended value") {
        // d = 25, three criteria sized {2,3,3} with positive weights: an
        // unlisted candidate shares a positively weighted choice with
        // probability 1 - (1/2)(2/3)(2/3) = 7/9, so the degree should land
        // near 25 + 75 * 7/9 = 83.3
        double total = 0.0;
        const int runs = 12;
        for (std::uint64_t seed = 1; seed <= runs; ++seed) {
            CriteriaGenOptions opts;
            opts.count = 3;
            opts.choice_sizes = {2, 3, 3};
            opts.weight_min = 1;
            opts.weight_max = 5;
            Instance inst = attach_random_criteria(generate_srti(40, 0.25, seed), opts, seed + 7);
            total += completeness_degree(personalize_instance(inst));
        }
        const double mean = total / runs;
        CHECK(mean > 78.0);
        CHECK(mean < 88.0);
    }
    SUBCASE("invalid options") {
        CHECK_THROWS_AS(
            attach_random_criteria(base, CriteriaGenOptions{.count = 2, .choice_sizes = {0}}, 1),
            std::invalid_argument);
        CHECK_THROWS_AS(attach_random_criteria(
                            base, CriteriaGenOptions{.count = 2, .weight_min = 3, .weight_max = 1}, 1),
                        std::invalid_argument);
    }
}
