#pragma once

// Penalty levels for criteria-driven optimization: per-criterion closeness
// distances, smoking comfort, department diversity, forbidden-pair
// violations, and assembly of the lexicographic objective vector.
//
// Penalties count ordered matched pairs, so symmetric distances appear
// twice; every argmin is preserved. Singles contribute nothing anywhere,
// which means the objective alone never discourages leaving agents single;
// only stability forces pairs to form.

#include <stdexcept>
#include <string>
#include <vector>

#include "srti/core.hpp"

namespace srti {

enum class LevelKind { criterion, smoking, diversity };

struct ObjectiveLevel {
    LevelKind kind = LevelKind::criterion;
    int criterion = -1;  // index into the instance's criteria list
};

// Ordered penalty levels, highest priority first.
struct ObjectiveConfig {
    std::vector<ObjectiveLevel> levels;

    bool empty() const { return levels.empty(); }
    int size() const { return static_cast<int>(levels.size()); }
};

// Objective vectors compare lexicographically; std::vector's operator< is
// exactly that order.
using ObjectiveVector = std::vector<long long>;

namespace detail {

inline void require_profiles(const Instance& inst, const char* what) {
    if (!inst.has_criteria())
        throw std::invalid_argument(std::string(what) + ": instance has no profiles");
}

inline void require_departments(const Instance& inst) {
    require_profiles(inst, "diversity penalty");
    for (Agent a = 0; a < inst.size(); ++a)
        if (!inst.profile(a).department.has_value())
            throw std::invalid_argument("diversity penalty: agent '" + inst.id(a) +
                                        "' has no department");
}

// Cost a matched ordered pair (x, y) contributes at one level.
inline long long ordered_pair_cost(const Instance& inst, const ObjectiveLevel& level, Agent x,
                                   Agent y) {
    switch (level.kind) {
        case LevelKind::criterion: {
            const int fx = inst.profile(x).choices[level.criterion];
            const int fy = inst.profile(y).choices[level.criterion];
            return fx > fy ? fx - fy : fy - fx;
        }
        case LevelKind::smoking: {
            const AgentProfile& px = inst.profile(x);
            const AgentProfile& py = inst.profile(y);
            long long c = 0;
            if (!px.smoker && py.smoker && !px.comfortable_with_smoker) ++c;
            if (px.smoker && py.smoker && !px.comfortable_with_smoker) ++c;
            return c;
        }
        case LevelKind::diversity:
            return inst.profile(x).department == inst.profile(y).department ? 1 : 0;
    }
    return 0;
}

// Total over both orientations of every matched pair.
inline long long level_penalty(const Instance& inst, const Matching& m,
                               const ObjectiveLevel& level) {
    long long total = 0;
    for (Agent x = 0; x < inst.size(); ++x) {
        const Agent y = m.partner(x);
        if (y == x) continue;
        total += ordered_pair_cost(inst, level, x, y);
    }
    return total;
}

}  // namespace detail

// Sum over all agents of |f(x, i) - f(M(x), i)|; singles contribute zero.
inline long long criterion_distance(const Instance& inst, const Matching& m, int criterion) {
    detail::require_profiles(inst, "criterion distance");
    if (criterion < 0 || criterion >= inst.criteria().count())
        throw std::invalid_argument("criterion index out of range");
    return detail::level_penalty(inst, m, {LevelKind::criterion, criterion});
}

// Ordered-pair smoking discomfort count: x penalizes being paired to a
// smoker it is not comfortable with, whether x is a non-smoker or a smoker.
inline long long smoking_penalty(const Instance& inst, const Matching& m) {
    detail::require_profiles(inst, "smoking penalty");
    return detail::level_penalty(inst, m, {LevelKind::smoking, -1});
}

// Ordered matched pairs with equal departments. Minimizing this maximizes
// cross-department pairs.
inline long long diversity_penalty(const Instance& inst, const Matching& m) {
    detail::require_departments(inst);
    return detail::level_penalty(inst, m, {LevelKind::diversity, -1});
}

// Matched pairs that appear in the instance's forbidden set; a feasible
// matching yields none.
inline std::vector<std::pair<Agent, Agent>> forbidden_violations(const Instance& inst,
                                                                 const Matching& m) {
    std::vector<std::pair<Agent, Agent>> out;
    for (auto [a, b] : m.pairs())
        if (inst.is_forbidden(a, b)) out.push_back(inst.canonical_pair(a, b));
    return out;
}

inline ObjectiveVector objective_vector(const Instance& inst, const Matching& m,
                                        const ObjectiveConfig& config) {
    ObjectiveVector out;
    out.reserve(config.levels.size());
    for (const auto& level : config.levels) {
        switch (level.kind) {
            case LevelKind::criterion:
                out.push_back(criterion_distance(inst, m, level.criterion));
                break;
            case LevelKind::smoking:
                out.push_back(smoking_penalty(inst, m));
                break;
            case LevelKind::diversity:
                out.push_back(diversity_penalty(inst, m));
                break;
        }
    }
    return out;
}

}  // namespace srti
