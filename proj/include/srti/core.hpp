#pragma once

// Core data model for roommate matching instances: agents, weak preference
// orders (ranked tie groups), questionnaire criteria and per-agent profiles,
// forbidden pairs, and matchings (involutions on the agent set).

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srti {

// Dense agent index, valid within one Instance. Document-level identity is
// the agent's string id; all algorithms work on indices.
using Agent = int;

inline constexpr int kNotRanked = -1;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weak order over a subset of agents: earlier tiers are strictly preferred,
// members of one tier are tied. The owner never appears in its own order.
struct PreferenceOrder {
    std::vector<std::vector<Agent>> tiers;

    bool empty() const { return tiers.empty(); }

    int size() const {
        int n = 0;
        for (const auto& t : tiers) n += static_cast<int>(t.size());
        return n;
    }

    friend bool operator==(const PreferenceOrder&, const PreferenceOrder&) = default;

    // Tier index of y, or kNotRanked if y is absent.
    int tier_of(Agent y) const {
        for (int i = 0; i < static_cast<int>(tiers.size()); ++i)
            if (std::find(tiers[i].begin(), tiers[i].end(), y) != tiers[i].end()) return i;
        return kNotRanked;
    }
};

struct Criterion {
    std::string name;
    std::vector<std::string> choices;  // ordered by closeness

    friend bool operator==(const Criterion&, const Criterion&) = default;
};

struct CriteriaSpec {
    std::vector<Criterion> criteria;
    std::vector<int> priority_order;  // criterion indices, most important first

    int count() const { return static_cast<int>(criteria.size()); }

    int index_of(const std::string& name) const {
        for (int i = 0; i < count(); ++i)
            if (criteria[i].name == name) return i;
        return -1;
    }

    friend bool operator==(const CriteriaSpec&, const CriteriaSpec&) = default;
};

struct AgentProfile {
    std::vector<int> choices;  // 1-based choice index per criterion
    std::vector<int> weights;  // non-negative importance per criterion
    bool smoker = false;
    bool comfortable_with_smoker = false;
    std::optional<std::string> department;

    friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

namespace detail {

inline void validate_criteria(const CriteriaSpec& spec) {
    std::vector<std::string> names;
    for (const auto& c : spec.criteria) {
        if (c.name.empty()) throw ValidationError("criterion with empty name");
        if (c.choices.empty())
            throw ValidationError("criterion '" + c.name + "' has no choices");
        if (std::find(names.begin(), names.end(), c.name) != names.end())
            throw ValidationError("duplicate criterion name '" + c.name + "'");
        names.push_back(c.name);
    }
    const int k = spec.count();
    if (static_cast<int>(spec.priority_order.size()) != k)
        throw ValidationError("priority_order length does not match criteria count");
    std::vector<bool> seen(k, false);
    for (int i : spec.priority_order) {
        if (i < 0 || i >= k || seen[i])
            throw ValidationError("priority_order is not a permutation of the criteria");
        seen[i] = true;
    }
}

}  // namespace detail

// Immutable problem instance. Construction validates every structural
// invariant; afterwards the object is safe to share across threads.
class Instance {
  public:
    Instance() = default;

    Instance(std::vector<std::string> ids, std::vector<PreferenceOrder> orders,
             std::optional<CriteriaSpec> criteria = std::nullopt,
             std::vector<AgentProfile> profiles = {},
             std::vector<std::pair<Agent, Agent>> forbidden = {}, bool explicit_first = true)
        : ids_(std::move(ids)),
          orders_(std::move(orders)),
          criteria_(std::move(criteria)),
          profiles_(std::move(profiles)),
          explicit_first_(explicit_first) {
        n_ = static_cast<int>(ids_.size());
        for (int a = 0; a < n_; ++a) {
            if (ids_[a].empty()) throw ValidationError("empty agent id");
            if (!index_.emplace(ids_[a], a).second)
                throw ValidationError("duplicate agent id '" + ids_[a] + "'");
        }
        if (static_cast<int>(orders_.size()) != n_)
            throw ValidationError("preference order count does not match agent count");

        rank_.assign(static_cast<size_t>(n_) * n_, kNotRanked);
        acceptable_.resize(n_);
        for (Agent x = 0; x < n_; ++x) {
            for (int t = 0; t < static_cast<int>(orders_[x].tiers.size()); ++t) {
                const auto& tier = orders_[x].tiers[t];
                if (tier.empty())
                    throw ValidationError("empty tie group in preference order of '" + ids_[x] + "'");
                for (Agent y : tier) {
                    if (y < 0 || y >= n_)
                        throw ValidationError("preference order of '" + ids_[x] +
                                              "' references an unknown agent");
                    if (y == x)
                        throw ValidationError("agent '" + ids_[x] +
                                              "' appears in its own preference order");
                    if (rank_ref(x, y) != kNotRanked)
                        throw ValidationError("agent '" + ids_[y] +
                                              "' appears twice in the preference order of '" +
                                              ids_[x] + "'");
                    rank_ref(x, y) = t;
                    acceptable_[x].push_back(y);
                }
            }
        }

        if (criteria_.has_value()) {
            detail::validate_criteria(*criteria_);
            if (static_cast<int>(profiles_.size()) != n_)
                throw ValidationError("criteria present but not every agent has a profile");
            const int k = criteria_->count();
            for (Agent a = 0; a < n_; ++a) {
                const auto& p = profiles_[a];
                if (static_cast<int>(p.choices.size()) != k ||
                    static_cast<int>(p.weights.size()) != k)
                    throw ValidationError("profile of '" + ids_[a] +
                                          "' does not cover every criterion");
                for (int i = 0; i < k; ++i) {
                    const int m = static_cast<int>(criteria_->criteria[i].choices.size());
                    if (p.choices[i] < 1 || p.choices[i] > m)
                        throw ValidationError("profile of '" + ids_[a] + "': choice " +
                                              std::to_string(p.choices[i]) +
                                              " out of range for criterion '" +
                                              criteria_->criteria[i].name + "'");
                    if (p.weights[i] < 0)
                        throw ValidationError("profile of '" + ids_[a] + "' has a negative weight");
                }
            }
        } else if (!profiles_.empty()) {
            throw ValidationError("profiles present without a criteria list");
        }

        for (auto& [a, b] : forbidden) {
            if (a < 0 || a >= n_ || b < 0 || b >= n_)
                throw ValidationError("forbidden pair references an unknown agent");
            if (a == b) throw ValidationError("forbidden pair of an agent with itself");
            auto p = canonical_pair(a, b);
            if (std::find(forbidden_.begin(), forbidden_.end(), p) == forbidden_.end())
                forbidden_.push_back(p);
        }
        std::sort(forbidden_.begin(), forbidden_.end(), [this](const auto& l, const auto& r) {
            return std::make_pair(ids_[l.first], ids_[l.second]) <
                   std::make_pair(ids_[r.first], ids_[r.second]);
        });
    }

    int size() const { return n_; }
    const std::string& id(Agent a) const { return ids_[a]; }
    const std::vector<std::string>& ids() const { return ids_; }

    std::optional<Agent> index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const PreferenceOrder& order(Agent a) const { return orders_[a]; }

    // Tier index of y in x's order; kNotRanked when y is not listed.
    int rank(Agent x, Agent y) const { return rank_[static_cast<size_t>(x) * n_ + y]; }

    bool accepts(Agent x, Agent y) const { return rank(x, y) != kNotRanked; }
    bool mutually_acceptable(Agent x, Agent y) const {
        return x != y && accepts(x, y) && accepts(y, x);
    }

    // Flattened tiers of x's order, most preferred first.
    const std::vector<Agent>& acceptable(Agent x) const { return acceptable_[x]; }

    bool has_criteria() const { return criteria_.has_value(); }
    const CriteriaSpec& criteria() const {
        if (!criteria_) throw std::logic_error("instance has no criteria");
        return *criteria_;
    }
    const AgentProfile& profile(Agent a) const {
        if (profiles_.empty()) throw std::logic_error("instance has no profiles");
        return profiles_[a];
    }
    const std::vector<AgentProfile>& profiles() const { return profiles_; }

    // Choice of agent a for criterion i (1-based value).
    int choice(Agent a, int i) const { return profile(a).choices[i]; }
    int weight(Agent a, int i) const { return profile(a).weights[i]; }

    const std::vector<std::pair<Agent, Agent>>& forbidden() const { return forbidden_; }
    bool is_forbidden(Agent x, Agent y) const {
        auto p = canonical_pair(x, y);
        return std::find(forbidden_.begin(), forbidden_.end(), p) != forbidden_.end();
    }

    bool explicit_first() const { return explicit_first_; }

    // Unordered pairs canonicalize on lexicographic id order.
    std::pair<Agent, Agent> canonical_pair(Agent a, Agent b) const {
        return ids_[a] < ids_[b] ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    // Structural equality over the stored fields; derived tables are not
    // compared.
    friend bool operator==(const Instance& a, const Instance& b) {
        return a.ids_ == b.ids_ && a.orders_ == b.orders_ && a.criteria_ == b.criteria_ &&
               a.profiles_ == b.profiles_ && a.forbidden_ == b.forbidden_ &&
               a.explicit_first_ == b.explicit_first_;
    }

  private:
    int& rank_ref(Agent x, Agent y) { return rank_[static_cast<size_t>(x) * n_ + y]; }

    int n_ = 0;
    std::vector<std::string> ids_;
    std::map<std::string, Agent> index_;
    std::vector<PreferenceOrder> orders_;
    std::vector<int> rank_;
    std::vector<std::vector<Agent>> acceptable_;
    std::optional<CriteriaSpec> criteria_;
    std::vector<AgentProfile> profiles_;
    std::vector<std::pair<Agent, Agent>> forbidden_;
    bool explicit_first_ = true;
};

// An involution on the agent set; partner(x) == x means x is single.
class Matching {
  public:
    Matching() = default;
    explicit Matching(int n) : partner_(n) {
        for (int i = 0; i < n; ++i) partner_[i] = i;
    }

    static Matching from_pairs(int n, const std::vector<std::pair<Agent, Agent>>& pairs) {
        Matching m(n);
        for (auto [a, b] : pairs) {
            if (a < 0 || a >= n || b < 0 || b >= n || a == b)
                throw ValidationError("matching pair out of range");
            if (m.partner_[a] != a || m.partner_[b] != b)
                throw ValidationError("agent matched more than once");
            m.partner_[a] = b;
            m.partner_[b] = a;
        }
        return m;
    }

    int size() const { return static_cast<int>(partner_.size()); }
    Agent partner(Agent x) const { return partner_[x]; }
    bool is_single(Agent x) const { return partner_[x] == x; }

    void set_pair(Agent a, Agent b) {
        partner_[a] = b;
        partner_[b] = a;
    }
    void set_single(Agent a) { partner_[a] = a; }

    // Matched pairs with a < b by index.
    std::vector<std::pair<Agent, Agent>> pairs() const {
        std::vector<std::pair<Agent, Agent>> out;
        for (Agent x = 0; x < size(); ++x)
            if (partner_[x] > x) out.emplace_back(x, partner_[x]);
        return out;
    }

    std::vector<Agent> singles() const {
        std::vector<Agent> out;
        for (Agent x = 0; x < size(); ++x)
            if (partner_[x] == x) out.push_back(x);
        return out;
    }

    friend bool operator==(const Matching&, const Matching&) = default;

  private:
    std::vector<Agent> partner_;
};

// Structural problems of a purported matching against an instance: wrong
// size, broken involution, or matched pairs that are not mutually acceptable
// or are forbidden. Empty result means the matching is valid.
inline std::vector<std::string> matching_violations(const Instance& inst, const Matching& m) {
    std::vector<std::string> out;
    if (m.size() != inst.size()) {
        out.push_back("matching covers " + std::to_string(m.size()) + " agents, instance has " +
                      std::to_string(inst.size()));
        return out;
    }
    for (Agent x = 0; x < inst.size(); ++x) {
        Agent y = m.partner(x);
        if (y < 0 || y >= inst.size() || m.partner(y) != x) {
            out.push_back("assignment is not an involution at '" + inst.id(x) + "'");
            continue;
        }
        if (y <= x || y == x) continue;
        if (!inst.mutually_acceptable(x, y))
            out.push_back("pair {" + inst.id(x) + ", " + inst.id(y) +
                          "} is not mutually acceptable");
        if (inst.is_forbidden(x, y))
            out.push_back("pair {" + inst.id(x) + ", " + inst.id(y) + "} is forbidden");
    }
    return out;
}

// Average preference-list length as a percentage of n-1, over the instance's
// current (possibly extended) orders.
inline double completeness_degree(const Instance& inst) {
    const int n = inst.size();
    if (n < 2) throw std::invalid_argument("completeness degree needs at least 2 agents");
    double sum = 0.0;
    for (Agent x = 0; x < n; ++x)
        sum += static_cast<double>(inst.acceptable(x).size()) / (n - 1);
    return 100.0 * sum / n;
}

// Matched pairs as id pairs, each (min,max) lexicographically, list sorted.
inline std::vector<std::pair<std::string, std::string>> pairs_by_id(const Instance& inst,
                                                                    const Matching& m) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : m.pairs()) {
        const std::string& ia = inst.id(a);
        const std::string& ib = inst.id(b);
        out.emplace_back(std::min(ia, ib), std::max(ia, ib));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> singles_by_id(const Instance& inst, const Matching& m) {
    std::vector<std::string> out;
    for (Agent x : m.singles()) out.push_back(inst.id(x));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace srti
