#include <doctest.h>

#include <algorithm>

#include <srti/generator.hpp>
#include <srti/io.hpp>
#include <srti/objectives.hpp>
#include <srti/oracle.hpp>
#include <srti/personalization.hpp>
#include <srti/solver.hpp>
#include <srti/stability.hpp>

#include "fixtures.hpp"

using namespace srti;

namespace {

Instance ensemble_instance(int n, double p, std::uint64_t seed, bool criteria) {
    Instance inst = generate_srti(n, p, seed);
    if (criteria) {
        CriteriaGenOptions opts;
        opts.count = 5;
        opts.choice_sizes = {2, 2, 3, 3, 3};
        inst = attach_random_criteria(inst, opts, seed * 131 + 7);
        inst = personalize_instance(inst);
    }
    return inst;
}

std::string serialized_pairs(const Instance& inst, const Matching& m) {
    std::string out;
    for (const auto& [a, b] : pairs_by_id(inst, m)) out += "(" + a + "," + b + ")";
    return out;
}

}  // namespace

TEST_CASE("decision mode on the worked instance") {
    const Instance inst = fixtures::dorm4_extended();
    const SolveResult r = solve_decision(inst);
    REQUIRE(r.outcome == SolveOutcome::solution);
    REQUIRE(r.matching.has_value());
    CHECK(is_stable(inst, *r.matching));
    CHECK(blocking_pairs(inst, *r.matching).empty());
    // the instance has a unique stable matching
    CHECK(*r.matching == fixtures::pair_up(inst, {{"Ayse", "Cem"}, {"Buse", "Duru"}}));
}

TEST_CASE("decision mode edge cases") {
    SUBCASE("strict 3-cycle is unsat") {
        const SolveResult r = solve_decision(fixtures::cycle3());
        CHECK(r.outcome == SolveOutcome::unsat);
        CHECK_FALSE(r.matching.has_value());
    }
    SUBCASE("empty instance: everyone vacuously single") {
        const Instance inst = parse_instance(R"({"agents": []})");
        const SolveResult r = solve_decision(inst);
        REQUIRE(r.outcome == SolveOutcome::solution);
        CHECK(r.matching->size() == 0);
    }
    SUBCASE("lonely agent stays single") {
        const Instance inst = parse_instance(R"({"agents": ["a"]})");
        const SolveResult r = solve_decision(inst);
        REQUIRE(r.outcome == SolveOutcome::solution);
        CHECK(r.matching->is_single(0));
    }
}

TEST_CASE("optimize mode on the worked instance") {
    const Instance inst = fixtures::dorm4_extended();
    SolveConfig cfg;
    cfg.objective = fixtures::dorm4_objective();
    const SolveResult r = solve_optimize(inst, cfg);
    REQUIRE(r.outcome == SolveOutcome::solution);
    CHECK(r.proven_optimal);
    CHECK(r.vector == ObjectiveVector{1, 2, 4, 2, 4});
    const auto oracle_best = oracle::brute_force_optimum(inst, cfg.objective);
    REQUIRE(oracle_best.has_value());
    CHECK(r.vector == oracle_best->vector);
    CHECK(objective_vector(inst, *r.matching, cfg.objective) == r.vector);

    SUBCASE("optimize requires an objective") {
        CHECK_THROWS_AS(solve_optimize(inst, SolveConfig{}), std::invalid_argument);
    }
}

TEST_CASE("solver agrees with the oracle across a random ensemble") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        for (int n : {4, 5, 6, 7, 8}) {
            for (double p : {0.3, 0.6, 1.0}) {
                for (bool criteria : {false, true}) {
                    const Instance inst = ensemble_instance(n, p, seed * 100 + n, criteria);
                    const auto stable = oracle::brute_force_stable(inst);

                    const SolveResult dec = solve_decision(inst);
                    if (stable.empty()) {
                        CHECK(dec.outcome == SolveOutcome::unsat);
                    } else {
                        REQUIRE(dec.outcome == SolveOutcome::solution);
                        CHECK(blocking_pairs(inst, *dec.matching).empty());
                        CHECK(forbidden_violations(inst, *dec.matching).empty());
                    }

                    if (criteria) {
                        SolveConfig cfg;
                        for (int c : inst.criteria().priority_order)
                            cfg.objective.levels.push_back({LevelKind::criterion, c});
                        const SolveResult opt = solve_optimize(inst, cfg);
                        const auto best = oracle::brute_force_optimum(inst, cfg.objective);
                        if (!best) {
                            CHECK(opt.outcome == SolveOutcome::unsat);
                        } else {
                            REQUIRE(opt.outcome == SolveOutcome::solution);
                            CHECK(opt.proven_optimal);
                            CHECK(opt.vector == best->vector);
                            CHECK(is_stable(inst, *opt.matching));
                            CHECK(objective_vector(inst, *opt.matching, cfg.objective) ==
                                  opt.vector);
                        }
                    }
                    ++checked;
                }
            }
        }
    }
    CHECK(checked == 12 * 5 * 3 * 2);
}

TEST_CASE("anytime events improve strictly and end at the solution") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = ensemble_instance(8, 1.0, seed, true);
        SolveConfig cfg;
        cfg.objective = fixtures::dorm4_objective();
        std::vector<ObjectiveVector> seen;
        cfg.on_improvement = [&](double, const ObjectiveVector& v) { seen.push_back(v); };
        const SolveResult r = solve_optimize(inst, cfg);
        REQUIRE(seen.size() == r.events.size());
        for (size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == r.events[i].vector);
        for (size_t i = 1; i < r.events.size(); ++i)
            CHECK(r.events[i].vector < r.events[i - 1].vector);
        if (r.outcome == SolveOutcome::solution) {
            REQUIRE(!r.events.empty());
            CHECK(r.events.back().vector == r.vector);
        }
    }
}

TEST_CASE("deterministic solves are repeatable and canonical") {
    for (std::uint64_t seed = 3; seed <= 10; ++seed) {
        const Instance inst = ensemble_instance(7, 0.8, seed, true);
        SolveConfig cfg;
        cfg.objective = fixtures::dorm4_objective();
        cfg.deterministic = true;

        const SolveResult a = solve_optimize(inst, cfg);
        const SolveResult b = solve_optimize(inst, cfg);
        REQUIRE(a.outcome == b.outcome);
        if (a.outcome != SolveOutcome::solution) continue;
        CHECK(*a.matching == *b.matching);
        CHECK(a.vector == b.vector);
        REQUIRE(a.events.size() == b.events.size());
        for (size_t i = 0; i < a.events.size(); ++i)
            CHECK(a.events[i].vector == b.events[i].vector);

        // canonical tie-break: smallest serialized pair list among optima
        std::string best_serialized;
        bool first = true;
        for (const Matching& m : oracle::brute_force_stable(inst)) {
            if (objective_vector(inst, m, cfg.objective) != a.vector) continue;
            const std::string s = serialized_pairs(inst, m);
            if (first || s < best_serialized) best_serialized = s;
            first = false;
        }
        CHECK(serialized_pairs(inst, *a.matching) == best_serialized);
    }
}

TEST_CASE("forbidden pairs are respected and can force unsat") {
    SUBCASE("forbidding the only stable pairing") {
        const Instance inst = parse_instance(R"({
            "agents": ["a", "b"],
            "preferences": {"a": [["b"]], "b": [["a"]]},
            "forbidden": [["a", "b"]]
        })");
        CHECK(solve_decision(inst).outcome == SolveOutcome::unsat);
        CHECK(oracle::brute_force_stable(inst).empty());
    }
    SUBCASE("solver avoids forbidden pairs when alternatives exist") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Instance base = generate_srti(6, 0.9, seed);
            // forbid the first matched pair of the unconstrained solve
            const SolveResult free = solve_decision(base);
            if (free.outcome != SolveOutcome::solution || free.matching->pairs().empty())
                continue;
            auto [fa, fb] = free.matching->pairs().front();
            std::vector<PreferenceOrder> orders;
            for (Agent a = 0; a < base.size(); ++a) orders.push_back(base.order(a));
            const Instance restricted(base.ids(), std::move(orders), std::nullopt, {},
                                      {{fa, fb}}, true);
            const SolveResult r = solve_decision(restricted);
            const auto stable = oracle::brute_force_stable(restricted);
            if (stable.empty()) {
                CHECK(r.outcome == SolveOutcome::unsat);
            } else {
                REQUIRE(r.outcome == SolveOutcome::solution);
                CHECK(r.matching->partner(fa) != fb);
                CHECK(blocking_pairs(restricted, *r.matching).empty());
            }
        }
    }
}

TEST_CASE("time limit yields a timeout outcome") {
    // a large dense optimize run cannot finish in a microsecond budget
    Instance inst = generate_srti(60, 0.9, 4);
    CriteriaGenOptions opts;
    opts.count = 3;
    inst = attach_random_criteria(inst, opts, 9);
    SolveConfig cfg;
    for (int c : inst.criteria().priority_order)
        cfg.objective.levels.push_back({LevelKind::criterion, c});
    cfg.time_limit_s = 1e-6;
    const SolveResult r = solve_optimize(inst, cfg);
    CHECK(r.outcome == SolveOutcome::timeout);
    CHECK_FALSE(r.proven_optimal);
    if (r.matching) {
        CHECK(is_stable(inst, *r.matching));
        CHECK(objective_vector(inst, *r.matching, cfg.objective) == r.vector);
    }
}

TEST_CASE("solver scales to dense mid-size decision instances") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Instance inst = generate_srti(60, 0.5, seed);
        const SolveResult r = solve_decision(inst);
        if (r.outcome == SolveOutcome::solution)
            CHECK(blocking_pairs(inst, *r.matching).empty());
        else
            CHECK(r.outcome == SolveOutcome::unsat);
    }
}
