#pragma once

// Shared fixtures: a 4-agent dormitory questionnaire instance with five
// criteria (the worked example used across the suites), its derived
// extended-list form, and small helpers.

#include <stdexcept>
#include <string>
#include <vector>

#include <srti/core.hpp>
#include <srti/io.hpp>

namespace fixtures {

inline std::string dorm4_json() {
    return R"({
  "agents": ["Ayse", "Buse", "Cem", "Duru"],
  "preferences": {
    "Ayse": [["Duru"]],
    "Buse": [],
    "Cem": [["Ayse"], ["Buse"]],
    "Duru": [["Cem"]]
  },
  "criteria": [
    {"name": "smoking", "choices": ["Smoker", "Non-smoker"]},
    {"name": "cleanliness", "choices": ["Clean", "Messy"]},
    {"name": "room environment", "choices": ["Quiet", "Social", "Social and quiet"]},
    {"name": "sleep habits",
     "choices": ["Goes to bed early", "Goes to bed before midnight", "Goes to bed after midnight"]},
    {"name": "study habits",
     "choices": ["Studies in the room", "Studies out of the room", "Studies in and out of the room"]}
  ],
  "priority_order": ["smoking", "cleanliness", "room environment", "sleep habits", "study habits"],
  "profiles": {
    "Ayse": {"choices": [2, 1, 1, 1, 1], "weights": [5, 4, 3, 2, 1],
             "smoker": false, "comfortable_with_smoker": false},
    "Buse": {"choices": [1, 2, 3, 3, 3], "weights": [1, 0, 3, 4, 5],
             "smoker": true, "comfortable_with_smoker": true},
    "Cem":  {"choices": [2, 1, 3, 2, 3], "weights": [5, 5, 4, 3, 2],
             "smoker": false, "comfortable_with_smoker": false},
    "Duru": {"choices": [2, 1, 3, 3, 3], "weights": [3, 3, 3, 3, 3],
             "smoker": false, "comfortable_with_smoker": false}
  },
  "objective": [
    {"kind": "smoking"},
    {"kind": "criterion", "criterion": "cleanliness"},
    {"kind": "criterion", "criterion": "room environment"},
    {"kind": "criterion", "criterion": "sleep habits"},
    {"kind": "criterion", "criterion": "study habits"}
  ]
})";
}

// Same data with the extended preference lists written out explicitly, so
// stability and objective tests do not depend on the derivation code.
inline std::string dorm4_extended_json() {
    return R"({
  "agents": ["Ayse", "Buse", "Cem", "Duru"],
  "preferences": {
    "Ayse": [["Duru"], ["Cem"]],
    "Buse": [["Duru"], ["Cem"]],
    "Cem": [["Ayse"], ["Buse"], ["Duru"]],
    "Duru": [["Cem"], ["Buse"], ["Ayse"]]
  },
  "criteria": [
    {"name": "smoking", "choices": ["Smoker", "Non-smoker"]},
    {"name": "cleanliness", "choices": ["Clean", "Messy"]},
    {"name": "room environment", "choices": ["Quiet", "Social", "Social and quiet"]},
    {"name": "sleep habits",
     "choices": ["Goes to bed early", "Goes to bed before midnight", "Goes to bed after midnight"]},
    {"name": "study habits",
     "choices": ["Studies in the room", "Studies out of the room", "Studies in and out of the room"]}
  ],
  "priority_order": ["smoking", "cleanliness", "room environment", "sleep habits", "study habits"],
  "profiles": {
    "Ayse": {"choices": [2, 1, 1, 1, 1], "weights": [5, 4, 3, 2, 1],
             "smoker": false, "comfortable_with_smoker": false},
    "Buse": {"choices": [1, 2, 3, 3, 3], "weights": [1, 0, 3, 4, 5],
             "smoker": true, "comfortable_with_smoker": true},
    "Cem":  {"choices": [2, 1, 3, 2, 3], "weights": [5, 5, 4, 3, 2],
             "smoker": false, "comfortable_with_smoker": false},
    "Duru": {"choices": [2, 1, 3, 3, 3], "weights": [3, 3, 3, 3, 3],
             "smoker": false, "comfortable_with_smoker": false}
  },
  "objective": [
    {"kind": "smoking"},
    {"kind": "criterion", "criterion": "cleanliness"},
    {"kind": "criterion", "criterion": "room environment"},
    {"kind": "criterion", "criterion": "sleep habits"},
    {"kind": "criterion", "criterion": "study habits"}
  ]
})";
}

// Strict 3-cycle: a -> b -> c -> a. No stable matching exists.
inline std::string cycle3_json() {
    return R"({
  "agents": ["a", "b", "c"],
  "preferences": {
    "a": [["b"], ["c"]],
    "b": [["c"], ["a"]],
    "c": [["a"], ["b"]]
  }
})";
}

inline srti::Instance dorm4() { return srti::parse_instance(dorm4_json()); }
inline srti::Instance dorm4_extended() { return srti::parse_instance(dorm4_extended_json()); }
inline srti::Instance cycle3() { return srti::parse_instance(cycle3_json()); }

inline srti::ObjectiveConfig dorm4_objective() {
    auto doc = srti::parse_instance_document(dorm4_extended_json());
    if (!doc.objective) throw std::logic_error("fixture misses its objective block");
    return *doc.objective;
}

inline srti::Agent agent(const srti::Instance& inst, const std::string& id) {
    auto a = inst.index_of(id);
    if (!a) throw std::logic_error("fixture has no agent '" + id + "'");
    return *a;
}

inline srti::Matching pair_up(const srti::Instance& inst,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::pair<srti::Agent, srti::Agent>> resolved;
    for (const auto& [a, b] : pairs) resolved.emplace_back(agent(inst, a), agent(inst, b));
    return srti::Matching::from_pairs(inst.size(), resolved);
}

}  // namespace fixtures
