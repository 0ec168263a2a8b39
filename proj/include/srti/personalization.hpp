#pragma once

// Questionnaire-driven preference derivation: sorted profiles, the
// choice-acceptable candidate set, the derived order over it, and the
// extended order that concatenates the explicit and derived lists.

#include <stdexcept>
#include <vector>

#include "srti/core.hpp"

namespace srti {

struct SortedProfileLevel {
    int weight = 0;
    std::vector<std::pair<int, int>> entries;  // (choice value, criterion index)
};

// Criteria grouped by equal positive weight, heaviest level first.
// Zero-weight criteria are dropped entirely.
struct SortedProfile {
    std::vector<SortedProfileLevel> levels;

    int level_count() const { return static_cast<int>(levels.size()); }
};

inline SortedProfile sorted_profile(const CriteriaSpec& spec, const AgentProfile& prof) {
    SortedProfile out;
    std::vector<int> weights;
    for (int i = 0; i < spec.count(); ++i)
        if (prof.weights[i] > 0) weights.push_back(prof.weights[i]);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    for (int u : weights) {
        SortedProfileLevel level;
        level.weight = u;
        for (int i = 0; i < spec.count(); ++i)
            if (prof.weights[i] == u) level.entries.emplace_back(prof.choices[i], i);
        out.levels.push_back(std::move(level));
    }
    return out;
}

// Where a candidate's profile first stops agreeing with the owner's sorted
// profile: the earliest level not matched in full (1-based), and how many
// entries it matched there. Candidates matching every level get level m+1
// and count 0; all such candidates compare equal.
struct MatchSignature {
    int first_partial_level = 1;
    int count_at_level = 0;

    friend bool operator==(const MatchSignature&, const MatchSignature&) = default;

    // True when this signature ranks strictly better.
    bool better_than(const MatchSignature& o) const {
        if (first_partial_level != o.first_partial_level)
            return first_partial_level > o.first_partial_level;
        return count_at_level > o.count_at_level;
    }
};

inline MatchSignature match_signature(const SortedProfile& owner, const AgentProfile& candidate) {
    for (int j = 0; j < owner.level_count(); ++j) {
        const auto& level = owner.levels[j];
        int matched = 0;
        for (auto [choice, crit] : level.entries)
            if (candidate.choices[crit] == choice) ++matched;
        if (matched < static_cast<int>(level.entries.size())) return {j + 1, matched};
    }
    return {owner.level_count() + 1, 0};
}

// Agents outside x's explicit list sharing at least one positively weighted
// choice with x. Sorted by agent index.
inline std::vector<Agent> choice_acceptable_set(const Instance& inst, Agent x) {
    const CriteriaSpec& spec = inst.criteria();
    const AgentProfile& px = inst.profile(x);
    std::vector<Agent> out;
    for (Agent y = 0; y < inst.size(); ++y) {
        if (y == x || inst.accepts(x, y)) continue;
        const AgentProfile& py = inst.profile(y);
        for (int i = 0; i < spec.count(); ++i) {
            if (px.weights[i] > 0 && px.choices[i] == py.choices[i]) {
                out.push_back(y);
                break;
            }
        }
    }
    return out;
}

enum class DerivedOrder { prefers_first, prefers_second, tie };

// Relation of y and z in x's derived order. Both must be choice-acceptable
// to x.
inline DerivedOrder derived_compare(const Instance& inst, Agent x, Agent y, Agent z) {
    auto candidates = choice_acceptable_set(inst, x);
    auto in = [&](Agent a) {
        return std::find(candidates.begin(), candidates.end(), a) != candidates.end();
    };
    if (!in(y) || !in(z))
        throw std::invalid_argument("derived_compare: agent is not choice-acceptable to '" +
                                    inst.id(x) + "'");
    const SortedProfile prof = sorted_profile(inst.criteria(), inst.profile(x));
    const MatchSignature sy = match_signature(prof, inst.profile(y));
    const MatchSignature sz = match_signature(prof, inst.profile(z));
    if (sy.better_than(sz)) return DerivedOrder::prefers_first;
    if (sz.better_than(sy)) return DerivedOrder::prefers_second;
    return DerivedOrder::tie;
}

// Derived order over the choice-acceptable set: candidates ranked by match
// signature, equal signatures tied.
inline PreferenceOrder derived_pref_list(const Instance& inst, Agent x) {
    const SortedProfile prof = sorted_profile(inst.criteria(), inst.profile(x));
    std::vector<std::pair<MatchSignature, Agent>> ranked;
    for (Agent y : choice_acceptable_set(inst, x))
        ranked.emplace_back(match_signature(prof, inst.profile(y)), y);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first.better_than(b.first);
    });
    PreferenceOrder out;
    MatchSignature tier_sig;
    for (const auto& [sig, y] : ranked) {
        if (!out.tiers.empty() && sig == tier_sig) {
            out.tiers.back().push_back(y);
        } else {
            out.tiers.push_back({y});
            tier_sig = sig;
        }
    }
    return out;
}

// Explicit list and derived list concatenated; which comes first follows the
// instance's explicit_first policy. The two domains are disjoint.
inline PreferenceOrder extended_pref_list(const Instance& inst, Agent x) {
    PreferenceOrder explicit_part = inst.order(x);
    PreferenceOrder derived_part = derived_pref_list(inst, x);
    PreferenceOrder out;
    const PreferenceOrder& first = inst.explicit_first() ? explicit_part : derived_part;
    const PreferenceOrder& second = inst.explicit_first() ? derived_part : explicit_part;
    out.tiers = first.tiers;
    out.tiers.insert(out.tiers.end(), second.tiers.begin(), second.tiers.end());
    return out;
}

// Rewrites every preference order to its extended list, producing a plain
// instance ready for the solver. Criteria, profiles and forbidden pairs are
// carried along so objective levels can still be evaluated; deriving again
// is a no-op because every choice-acceptable agent is now explicitly listed.
inline Instance personalize_instance(const Instance& inst) {
    if (!inst.has_criteria())
        throw std::invalid_argument("personalize_instance: instance has no criteria");
    std::vector<PreferenceOrder> orders;
    orders.reserve(inst.size());
    for (Agent x = 0; x < inst.size(); ++x) orders.push_back(extended_pref_list(inst, x));
    return Instance(inst.ids(), std::move(orders), inst.criteria(), inst.profiles(),
                    inst.forbidden(), inst.explicit_first());
}

}  // namespace srti
