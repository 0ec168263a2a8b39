#pragma once

// Brute-force ground truth for small instances: enumerate every matching,
// filter the stable ones, and compute lexicographic optima by the
// level-by-level filter. Everything here is transcribed directly from the
// definitions and kept independent of the solver and of the stability
// module's fast paths, so the two routes can be cross-checked.

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <vector>

#include "srti/core.hpp"
#include "srti/objectives.hpp"

namespace srti::oracle {

inline constexpr int kDefaultAgentCap = 10;

namespace detail {

// Strict preference of y over z in x's order, by scanning tiers.
inline bool strictly_prefers(const Instance& inst, Agent x, Agent y, Agent z) {
    const int ry = inst.order(x).tier_of(y);
    const int rz = inst.order(x).tier_of(z);
    if (ry == kNotRanked || rz == kNotRanked) return false;
    return ry < rz;
}

// Conditions B1..B3, written out longhand.
inline bool pair_blocks(const Instance& inst, const Matching& m, Agent x, Agent y) {
    const bool b1 = inst.order(x).tier_of(y) != kNotRanked && inst.order(y).tier_of(x) != kNotRanked;
    if (!b1) return false;
    const bool b2 = m.is_single(x) || strictly_prefers(inst, x, y, m.partner(x));
    const bool b3 = m.is_single(y) || strictly_prefers(inst, y, x, m.partner(y));
    return b2 && b3;
}

inline bool matching_is_stable(const Instance& inst, const Matching& m) {
    for (Agent x = 0; x < inst.size(); ++x)
        for (Agent y = x + 1; y < inst.size(); ++y)
            if (m.partner(x) != y && pair_blocks(inst, m, x, y)) return false;
    return true;
}

template <class Visit>
void enumerate_rec(const Instance& inst, Matching& m, std::vector<bool>& used, Agent from,
                   const Visit& visit) {
    Agent x = from;
    while (x < inst.size() && used[x]) ++x;
    if (x == inst.size()) {
        visit(m);
        return;
    }
    used[x] = true;

    // x stays single
    m.set_single(x);
    enumerate_rec(inst, m, used, x + 1, visit);

    // x pairs with a later, mutually acceptable, non-forbidden agent
    for (Agent y = x + 1; y < inst.size(); ++y) {
        if (used[y]) continue;
        if (!inst.mutually_acceptable(x, y)) continue;
        if (inst.is_forbidden(x, y)) continue;
        used[y] = true;
        m.set_pair(x, y);
        enumerate_rec(inst, m, used, x + 1, visit);
        m.set_single(x);
        m.set_single(y);
        used[y] = false;
    }
    used[x] = false;
}

// Level cost written straight from the definitions, without going through
// the objectives module.
inline long long transcribed_level_cost(const Instance& inst, const Matching& m,
                                        const ObjectiveLevel& level) {
    long long total = 0;
    for (Agent x = 0; x < inst.size(); ++x) {
        const Agent y = m.partner(x);
        switch (level.kind) {
            case LevelKind::criterion:
                total += std::abs(inst.profile(x).choices[level.criterion] -
                                  inst.profile(y).choices[level.criterion]);
                break;
            case LevelKind::smoking: {
                if (y == x) break;
                const AgentProfile& px = inst.profile(x);
                if (!px.comfortable_with_smoker && inst.profile(y).smoker) ++total;
                break;
            }
            case LevelKind::diversity:
                if (y != x && inst.profile(x).department == inst.profile(y).department) ++total;
                break;
        }
    }
    return total;
}

}  // namespace detail

// Calls visit once for every matching whose pairs are mutually acceptable
// and not forbidden. Throws when the instance exceeds the agent cap.
template <class Visit>
void for_each_matching(const Instance& inst, const Visit& visit, int cap = kDefaultAgentCap) {
    if (inst.size() > cap)
        throw std::invalid_argument("oracle: instance has " + std::to_string(inst.size()) +
                                    " agents, cap is " + std::to_string(cap));
    Matching m(inst.size());
    std::vector<bool> used(inst.size(), false);
    detail::enumerate_rec(inst, m, used, 0, visit);
}

inline std::vector<Matching> enumerate_matchings(const Instance& inst,
                                                 int cap = kDefaultAgentCap) {
    std::vector<Matching> out;
    for_each_matching(inst, [&](const Matching& m) { out.push_back(m); }, cap);
    return out;
}

inline std::vector<Matching> brute_force_stable(const Instance& inst, int cap = kDefaultAgentCap) {
    std::vector<Matching> out;
    for_each_matching(
        inst,
        [&](const Matching& m) {
            if (detail::matching_is_stable(inst, m)) out.push_back(m);
        },
        cap);
    return out;
}

struct OptimumResult {
    Matching matching;
    ObjectiveVector vector;
};

// The level filter: start from all stable matchings, keep the sum-minimal
// ones level by level, and return any survivor with its vector.
inline std::optional<OptimumResult> brute_force_optimum(const Instance& inst,
                                                        const ObjectiveConfig& config,
                                                        int cap = kDefaultAgentCap) {
    std::vector<Matching> pool = brute_force_stable(inst, cap);
    if (pool.empty()) return std::nullopt;
    ObjectiveVector vec;
    for (const auto& level : config.levels) {
        long long best = detail::transcribed_level_cost(inst, pool.front(), level);
        for (const auto& m : pool)
            best = std::min(best, detail::transcribed_level_cost(inst, m, level));
        std::vector<Matching> kept;
        for (const auto& m : pool)
            if (detail::transcribed_level_cost(inst, m, level) == best) kept.push_back(m);
        pool.swap(kept);
        vec.push_back(best);
    }
    return OptimumResult{pool.front(), vec};
}

}  // namespace srti::oracle
