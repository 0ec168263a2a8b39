#pragma once

// Random instance generation: acceptability graphs drawn from the G(n, p)
// edge-probability model, uniform random strict preference permutations,
// and optional random questionnaire data. All draws go through mt19937_64
// with local helpers so a seed reproduces the same instance on any
// platform.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "srti/core.hpp"

namespace srti {

namespace detail {

inline std::uint64_t rng_u64(std::mt19937_64& rng) { return rng(); }

// Uniform integer in [0, n).
inline int rng_below(std::mt19937_64& rng, int n) {
    return static_cast<int>(rng_u64(rng) % static_cast<std::uint64_t>(n));
}

// Uniform real in [0, 1).
inline double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng_u64(rng) >> 11) * 0x1.0p-53;
}

inline void rng_shuffle(std::mt19937_64& rng, std::vector<Agent>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
        std::swap(v[i], v[rng_below(rng, i + 1)]);
}

inline std::vector<std::string> numbered_ids(int n) {
    int width = 1;
    for (int t = n; t >= 10; t /= 10) ++width;
    std::vector<std::string> ids;
    ids.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::string num = std::to_string(i);
        ids.push_back("a" + std::string(width - num.size(), '0') + num);
    }
    return ids;
}

}  // namespace detail

// Random instance on n agents: each unordered pair is mutually acceptable
// independently with probability edge_prob, and every agent ranks its
// neighbors in a uniform random strict order. tie_prob optionally merges a
// ranked agent into the preceding tie group; the model itself produces
// strict lists.
inline Instance generate_srti(int n, double edge_prob, std::uint64_t seed, double tie_prob = 0.0) {
    if (n < 1) throw std::invalid_argument("generate_srti: need at least one agent");
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw std::invalid_argument("generate_srti: edge probability must be in [0, 1]");
    if (tie_prob < 0.0 || tie_prob > 1.0)
        throw std::invalid_argument("generate_srti: tie probability must be in [0, 1]");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Agent>> neighbors(n);
    for (Agent a = 0; a < n; ++a) {
        for (Agent b = a + 1; b < n; ++b) {
            if (detail::rng_unit(rng) < edge_prob) {
                neighbors[a].push_back(b);
                neighbors[b].push_back(a);
            }
        }
    }

    std::vector<PreferenceOrder> orders(n);
    for (Agent a = 0; a < n; ++a) {
        detail::rng_shuffle(rng, neighbors[a]);
        for (Agent b : neighbors[a]) {
            const bool merge = !orders[a].tiers.empty() && tie_prob > 0.0 &&
                               detail::rng_unit(rng) < tie_prob;
            if (merge)
                orders[a].tiers.back().push_back(b);
            else
                orders[a].tiers.push_back({b});
        }
    }
    return Instance(detail::numbered_ids(n), std::move(orders));
}

struct CriteriaGenOptions {
    int count = 3;
    std::vector<int> choice_sizes;  // cycled when shorter than count; default 3 each
    int weight_min = 0;
    int weight_max = 5;
};

// Attaches m random criteria to an instance: uniform choices, uniform
// integer weights in [weight_min, weight_max], uniform smoker and comfort
// flags. Returns the instance unchanged when count is zero.
inline Instance attach_random_criteria(const Instance& inst, const CriteriaGenOptions& opts,
                                       std::uint64_t seed) {
    if (opts.count < 0) throw std::invalid_argument("attach_random_criteria: negative count");
    if (opts.count == 0) return inst;
    if (opts.weight_min < 0 || opts.weight_max < opts.weight_min)
        throw std::invalid_argument("attach_random_criteria: bad weight range");
    for (int s : opts.choice_sizes)
        if (s < 1) throw std::invalid_argument("attach_random_criteria: choice size below 1");

    CriteriaSpec spec;
    for (int i = 0; i < opts.count; ++i) {
        const int s = opts.choice_sizes.empty()
                          ? 3
                          : opts.choice_sizes[i % opts.choice_sizes.size()];
        Criterion c;
        c.name = "criterion" + std::to_string(i + 1);
        for (int j = 1; j <= s; ++j) c.choices.push_back("choice" + std::to_string(j));
        spec.criteria.push_back(std::move(c));
        spec.priority_order.push_back(i);
    }

    std::mt19937_64 rng(seed);
    std::vector<AgentProfile> profiles(inst.size());
    for (Agent a = 0; a < inst.size(); ++a) {
        AgentProfile& p = profiles[a];
        for (int i = 0; i < opts.count; ++i) {
            const int s = static_cast<int>(spec.criteria[i].choices.size());
            p.choices.push_back(1 + detail::rng_below(rng, s));
            p.weights.push_back(opts.weight_min +
                                detail::rng_below(rng, opts.weight_max - opts.weight_min + 1));
        }
        p.smoker = detail::rng_below(rng, 2) == 1;
        p.comfortable_with_smoker = detail::rng_below(rng, 2) == 1;
    }

    std::vector<PreferenceOrder> orders;
    orders.reserve(inst.size());
    for (Agent a = 0; a < inst.size(); ++a) orders.push_back(inst.order(a));
    return Instance(inst.ids(), std::move(orders), std::move(spec), std::move(profiles),
                    inst.forbidden(), inst.explicit_first());
}

}  // namespace srti
