#pragma once

// Instance and matching documents. Instances are JSON trees with top-level
// keys `agents`, `preferences`, and optionally `criteria`, `priority_order`,
// `profiles`, `forbidden`, `explicit_first`, and an `objective` level list.
// Matching documents carry `pairs`, `singles`, `objective`, `stable`.
// Serialization is canonical (sorted keys, two-space indent, sorted pair
// lists), so equal inputs produce byte-identical documents.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srti/core.hpp"
#include "srti/objectives.hpp"

namespace srti {

struct InstanceDocument {
    Instance instance;
    std::optional<ObjectiveConfig> objective;
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& j, const char* key, const char* ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string(ctx) + ": missing key '" + key + "'");
    return *it;
}

inline std::string as_string(const json& j, const char* ctx) {
    if (!j.is_string()) throw ParseError(std::string(ctx) + ": expected a string");
    return j.get<std::string>();
}

inline int as_int(const json& j, const char* ctx) {
    if (!j.is_number_integer()) throw ParseError(std::string(ctx) + ": expected an integer");
    return j.get<int>();
}

inline Agent resolve_agent(const std::vector<std::string>& ids, const std::string& id,
                           const char* ctx) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
        throw ParseError(std::string(ctx) + ": unknown agent '" + id + "'");
    return static_cast<Agent>(it - ids.begin());
}

inline ObjectiveConfig objective_from_json(const json& j, const CriteriaSpec* criteria) {
    if (!j.is_array()) throw ParseError("objective: expected a list of levels");
    ObjectiveConfig config;
    for (const auto& lj : j) {
        if (!lj.is_object()) throw ParseError("objective: each level must be an object");
        const std::string kind = as_string(member(lj, "kind", "objective level"), "objective kind");
        ObjectiveLevel level;
        if (kind == "criterion") {
            level.kind = LevelKind::criterion;
            const std::string name =
                as_string(member(lj, "criterion", "objective level"), "objective criterion");
            if (!criteria)
                throw ParseError("objective: criterion level '" + name +
                                 "' but the instance has no criteria");
            level.criterion = criteria->index_of(name);
            if (level.criterion < 0)
                throw ParseError("objective: unknown criterion '" + name + "'");
        } else if (kind == "smoking") {
            level.kind = LevelKind::smoking;
        } else if (kind == "diversity") {
            level.kind = LevelKind::diversity;
        } else {
            throw ParseError("objective: unknown level kind '" + kind + "'");
        }
        config.levels.push_back(level);
    }
    return config;
}

}  // namespace detail

inline InstanceDocument parse_instance_document(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

    std::vector<std::string> ids;
    for (const auto& a : detail::member(doc, "agents", "instance")) {
        if (!a.is_string()) throw ParseError("agents: expected a list of id strings");
        ids.push_back(a.get<std::string>());
    }

    std::vector<PreferenceOrder> orders(ids.size());
    if (doc.contains("preferences")) {
        const json& prefs = doc["preferences"];
        if (!prefs.is_object()) throw ParseError("preferences: expected an object keyed by agent");
        for (auto it = prefs.begin(); it != prefs.end(); ++it) {
            const Agent x = detail::resolve_agent(ids, it.key(), "preferences");
            if (!it.value().is_array())
                throw ParseError("preferences of '" + it.key() + "': expected a list of tiers");
            for (const auto& tier : it.value()) {
                if (!tier.is_array())
                    throw ParseError("preferences of '" + it.key() +
                                     "': each tier must be a list of ids");
                std::vector<Agent> members;
                for (const auto& m : tier)
                    members.push_back(detail::resolve_agent(
                        ids, detail::as_string(m, "preference entry"),
                        ("preferences of '" + it.key() + "'").c_str()));
                orders[x].tiers.push_back(std::move(members));
            }
        }
    }

    std::optional<CriteriaSpec> criteria;
    if (doc.contains("criteria")) {
        CriteriaSpec spec;
        if (!doc["criteria"].is_array()) throw ParseError("criteria: expected a list");
        for (const auto& cj : doc["criteria"]) {
            Criterion c;
            c.name = detail::as_string(detail::member(cj, "name", "criterion"), "criterion name");
            for (const auto& ch : detail::member(cj, "choices", "criterion"))
                c.choices.push_back(detail::as_string(ch, "criterion choice"));
            spec.criteria.push_back(std::move(c));
        }
        if (doc.contains("priority_order")) {
            for (const auto& nj : doc["priority_order"]) {
                const std::string name = detail::as_string(nj, "priority_order entry");
                const int idx = spec.index_of(name);
                if (idx < 0) throw ParseError("priority_order: unknown criterion '" + name + "'");
                spec.priority_order.push_back(idx);
            }
        } else {
            for (int i = 0; i < spec.count(); ++i) spec.priority_order.push_back(i);
        }
        criteria = std::move(spec);
    }

    std::vector<AgentProfile> profiles;
    if (doc.contains("profiles")) {
        if (!criteria) throw ParseError("profiles present without a criteria list");
        const json& pj = doc["profiles"];
        if (!pj.is_object()) throw ParseError("profiles: expected an object keyed by agent");
        profiles.resize(ids.size());
        std::vector<bool> seen(ids.size(), false);
        for (auto it = pj.begin(); it != pj.end(); ++it) {
            const Agent a = detail::resolve_agent(ids, it.key(), "profiles");
            const json& v = it.value();
            AgentProfile p;
            for (const auto& c : detail::member(v, "choices", "profile"))
                p.choices.push_back(detail::as_int(c, "profile choice"));
            for (const auto& w : detail::member(v, "weights", "profile"))
                p.weights.push_back(detail::as_int(w, "profile weight"));
            if (v.contains("smoker")) p.smoker = v["smoker"].get<bool>();
            if (v.contains("comfortable_with_smoker"))
                p.comfortable_with_smoker = v["comfortable_with_smoker"].get<bool>();
            if (v.contains("department") && !v["department"].is_null())
                p.department = detail::as_string(v["department"], "profile department");
            profiles[a] = std::move(p);
            seen[a] = true;
        }
        for (size_t i = 0; i < ids.size(); ++i)
            if (!seen[i]) throw ParseError("profiles: no profile for agent '" + ids[i] + "'");
    }

    std::vector<std::pair<Agent, Agent>> forbidden;
    if (doc.contains("forbidden")) {
        for (const auto& fj : doc["forbidden"]) {
            if (!fj.is_array() || fj.size() != 2)
                throw ParseError("forbidden: each entry must be a pair of ids");
            forbidden.emplace_back(
                detail::resolve_agent(ids, detail::as_string(fj[0], "forbidden pair"),
                                      "forbidden"),
                detail::resolve_agent(ids, detail::as_string(fj[1], "forbidden pair"),
                                      "forbidden"));
        }
    }

    bool explicit_first = true;
    if (doc.contains("explicit_first")) {
        if (!doc["explicit_first"].is_boolean())
            throw ParseError("explicit_first: expected a boolean");
        explicit_first = doc["explicit_first"].get<bool>();
    }

    InstanceDocument out;
    try {
        out.instance = Instance(std::move(ids), std::move(orders), std::move(criteria),
                                std::move(profiles), std::move(forbidden), explicit_first);
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    if (doc.contains("objective"))
        out.objective = detail::objective_from_json(
            doc["objective"], out.instance.has_criteria() ? &out.instance.criteria() : nullptr);
    return out;
}

inline Instance parse_instance(const std::string& text) {
    return parse_instance_document(text).instance;
}

inline ObjectiveConfig parse_objective_config(const std::string& text, const Instance& inst) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return detail::objective_from_json(doc, inst.has_criteria() ? &inst.criteria() : nullptr);
}

namespace detail {

inline json objective_to_json(const ObjectiveConfig& config, const CriteriaSpec* criteria) {
    json out = json::array();
    for (const auto& level : config.levels) {
        json lj;
        switch (level.kind) {
            case LevelKind::criterion:
                lj["kind"] = "criterion";
                lj["criterion"] = criteria->criteria[level.criterion].name;
                break;
            case LevelKind::smoking: lj["kind"] = "smoking"; break;
            case LevelKind::diversity: lj["kind"] = "diversity"; break;
        }
        out.push_back(std::move(lj));
    }
    return out;
}

}  // namespace detail

inline std::string serialize_instance(const Instance& inst,
                                      const std::optional<ObjectiveConfig>& objective = {}) {
    using detail::json;
    json doc;
    doc["agents"] = inst.ids();

    json prefs = json::object();
    for (Agent x = 0; x < inst.size(); ++x) {
        json tiers = json::array();
        for (const auto& tier : inst.order(x).tiers) {
            json tj = json::array();
            for (Agent y : tier) tj.push_back(inst.id(y));
            tiers.push_back(std::move(tj));
        }
        prefs[inst.id(x)] = std::move(tiers);
    }
    doc["preferences"] = std::move(prefs);

    if (inst.has_criteria()) {
        json cl = json::array();
        for (const auto& c : inst.criteria().criteria)
            cl.push_back({{"name", c.name}, {"choices", c.choices}});
        doc["criteria"] = std::move(cl);
        json po = json::array();
        for (int i : inst.criteria().priority_order)
            po.push_back(inst.criteria().criteria[i].name);
        doc["priority_order"] = std::move(po);

        json pj = json::object();
        for (Agent a = 0; a < inst.size(); ++a) {
            const AgentProfile& p = inst.profile(a);
            json v;
            v["choices"] = p.choices;
            v["weights"] = p.weights;
            v["smoker"] = p.smoker;
            v["comfortable_with_smoker"] = p.comfortable_with_smoker;
            if (p.department) v["department"] = *p.department;
            pj[inst.id(a)] = std::move(v);
        }
        doc["profiles"] = std::move(pj);
    }

    if (!inst.forbidden().empty()) {
        json fj = json::array();
        for (auto [a, b] : inst.forbidden()) fj.push_back({inst.id(a), inst.id(b)});
        doc["forbidden"] = std::move(fj);
    }

    doc["explicit_first"] = inst.explicit_first();
    if (objective)
        doc["objective"] = detail::objective_to_json(
            *objective, inst.has_criteria() ? &inst.criteria() : nullptr);
    return doc.dump(2) + "\n";
}

inline std::string matching_document(const Instance& inst, const Matching& m,
                                     const ObjectiveVector& vector, bool stable) {
    using detail::json;
    json doc;
    json pairs = json::array();
    for (const auto& [a, b] : pairs_by_id(inst, m)) pairs.push_back({a, b});
    doc["pairs"] = std::move(pairs);
    doc["singles"] = singles_by_id(inst, m);
    doc["objective"] = vector;
    doc["stable"] = stable;
    return doc.dump(2) + "\n";
}

inline Matching parse_matching_document(const Instance& inst, const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("matching document must be a JSON object");

    std::vector<bool> covered(inst.size(), false);
    auto resolve = [&](const std::string& id) {
        auto a = inst.index_of(id);
        if (!a) throw ParseError("matching: unknown agent '" + id + "'");
        if (covered[*a]) throw ParseError("matching: agent '" + id + "' listed twice");
        covered[*a] = true;
        return *a;
    };

    std::vector<std::pair<Agent, Agent>> pairs;
    for (const auto& pj : detail::member(doc, "pairs", "matching")) {
        if (!pj.is_array() || pj.size() != 2)
            throw ParseError("matching: each pair must be a two-element list");
        const Agent a = resolve(detail::as_string(pj[0], "matching pair"));
        const Agent b = resolve(detail::as_string(pj[1], "matching pair"));
        pairs.emplace_back(a, b);
    }
    if (doc.contains("singles"))
        for (const auto& sj : doc["singles"]) resolve(detail::as_string(sj, "matching single"));
    for (Agent a = 0; a < inst.size(); ++a)
        if (!covered[a])
            throw ParseError("matching: agent '" + inst.id(a) + "' is not covered");
    try {
        return Matching::from_pairs(inst.size(), pairs);
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

}  // namespace srti
