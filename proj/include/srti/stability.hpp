#pragma once

// Blocking-pair detection and stability verification under weak stability:
// a pair blocks only when both sides strictly prefer each other to their
// current assignment (or are single), and ties never block.

#include <vector>

#include "srti/core.hpp"

namespace srti {

enum class PairwiseOrder { prefers_first, prefers_second, indifferent, incomparable };

// How x's order relates y and z. Total function: agents missing from the
// order are incomparable; compare(y, y) is indifferent when y is listed.
inline PairwiseOrder compare(const PreferenceOrder& prefs, Agent y, Agent z) {
    const int ry = prefs.tier_of(y);
    const int rz = prefs.tier_of(z);
    if (ry == kNotRanked || rz == kNotRanked) return PairwiseOrder::incomparable;
    if (ry < rz) return PairwiseOrder::prefers_first;
    if (rz < ry) return PairwiseOrder::prefers_second;
    return PairwiseOrder::indifferent;
}

// Canonical unordered pair of agents blocking a specific matching.
struct BlockingPair {
    Agent x;
    Agent y;

    friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

namespace detail {

// One side of the blocking condition: x is single, or strictly prefers y to
// its partner. Assumes mutual acceptability was already established, so
// rank(x, partner) is defined for matched x.
inline bool prefers_over_assignment(const Instance& inst, const Matching& m, Agent x, Agent y) {
    if (m.is_single(x)) return true;
    return inst.rank(x, y) < inst.rank(x, m.partner(x));
}

}  // namespace detail

inline bool is_blocking_pair(const Instance& inst, const Matching& m, Agent x, Agent y) {
    if (x == y) return false;
    if (!inst.mutually_acceptable(x, y)) return false;
    if (m.partner(x) == y) return false;
    return detail::prefers_over_assignment(inst, m, x, y) &&
           detail::prefers_over_assignment(inst, m, y, x);
}

// All unordered blocking pairs, canonicalized and sorted by id.
inline std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Matching& m) {
    std::vector<BlockingPair> out;
    for (Agent x = 0; x < inst.size(); ++x) {
        for (Agent y : inst.acceptable(x)) {
            if (!is_blocking_pair(inst, m, x, y)) continue;
            auto [a, b] = inst.canonical_pair(x, y);
            if (a == x) out.push_back({a, b});
        }
    }
    std::sort(out.begin(), out.end(), [&inst](const BlockingPair& l, const BlockingPair& r) {
        return std::make_pair(inst.id(l.x), inst.id(l.y)) <
               std::make_pair(inst.id(r.x), inst.id(r.y));
    });
    return out;
}

inline bool is_stable(const Instance& inst, const Matching& m) {
    for (Agent x = 0; x < inst.size(); ++x)
        for (Agent y : inst.acceptable(x))
            if (y > x && is_blocking_pair(inst, m, x, y)) return false;
    return true;
}

}  // namespace srti
