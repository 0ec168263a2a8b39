#pragma once

// Native search engine for stable matchings and lexicographically optimal
// stable matchings.
//
// The engine runs a depth-first search over agents, deciding each agent to
// a partner or to single, always branching on the undecided agent with the
// fewest remaining options (smallest id on ties). Decisions propagate
// incrementally: once an agent w is decided, every pair {w, u} whose w-side
// blocking condition is permanently true tightens an upper bound on the
// rank u's final partner may have (single counts as rank infinity), so an
// assignment that would complete a blocking pair is pruned the moment it
// becomes inevitable, and agents whose options run out cut the branch at
// once. Leaves are therefore stable by construction.
//
// Optimization follows a staged recursion: minimize the first penalty level
// over all stable matchings, fix its optimum as an equality bound,
// re-search minimizing the second level, and so on. Decided-pair cost sums
// are exact lower bounds per level because undecided agents can still end
// up single at zero cost. Every strictly improving incumbent is reported
// through the improvement callback together with its full vector.

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "srti/core.hpp"
#include "srti/objectives.hpp"

namespace srti {

enum class SolveMode { decision, optimize };

struct SolveConfig {
    SolveMode mode = SolveMode::decision;
    ObjectiveConfig objective;
    std::optional<double> time_limit_s;
    std::uint64_t seed = 0;
    bool deterministic = true;
    // Called on each strictly improving solution with (elapsed s, vector).
    std::function<void(double, const ObjectiveVector&)> on_improvement;
};

enum class SolveOutcome { solution, unsat, timeout };

struct SolveEvent {
    double elapsed_s = 0.0;
    ObjectiveVector vector;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    int restarts = 0;  // searches beyond the first (per-level re-optimizations)
};

struct SolveResult {
    SolveOutcome outcome = SolveOutcome::unsat;
    std::optional<Matching> matching;  // solution, or best incumbent on timeout
    ObjectiveVector vector;
    bool proven_optimal = false;
    std::vector<SolveEvent> events;
    SolveStats stats;
};

namespace detail {

class SearchEngine {
  public:
    SearchEngine(const Instance& inst, const SolveConfig& cfg)
        : inst_(inst), cfg_(cfg), n_(inst.size()), start_(std::chrono::steady_clock::now()) {
        // id-lex positions drive every deterministic tie-break
        std::vector<Agent> by_id(n_);
        for (Agent a = 0; a < n_; ++a) by_id[a] = a;
        std::sort(by_id.begin(), by_id.end(),
                  [&](Agent a, Agent b) { return inst.id(a) < inst.id(b); });
        id_pos_.resize(n_);
        for (int i = 0; i < n_; ++i) id_pos_[by_id[i]] = i;

        acc_.resize(n_);
        cand_rank_.resize(n_);
        cand_id_.resize(n_);
        for (Agent x = 0; x < n_; ++x) {
            for (Agent y : inst.acceptable(x)) {
                if (!inst.accepts(y, x)) continue;
                acc_[x].push_back(y);
                if (!inst.is_forbidden(x, y)) cand_rank_[x].push_back(y);
            }
            std::sort(cand_rank_[x].begin(), cand_rank_[x].end(), [&](Agent a, Agent b) {
                if (inst.rank(x, a) != inst.rank(x, b)) return inst.rank(x, a) < inst.rank(x, b);
                return id_pos_[a] < id_pos_[b];
            });
            cand_id_[x] = cand_rank_[x];
            std::sort(cand_id_[x].begin(), cand_id_[x].end(),
                      [&](Agent a, Agent b) { return id_pos_[a] < id_pos_[b]; });
        }

        canonical_order_ = by_id;

        if (cfg.time_limit_s)
            deadline_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(*cfg.time_limit_s));
    }

    SolveResult run() {
        const int levels = cfg_.objective.size();
        if (cfg_.mode == SolveMode::optimize) {
            if (cfg_.objective.empty())
                throw std::invalid_argument("optimize mode requires an objective configuration");
            // surfaces missing profiles/departments/criteria before searching
            objective_vector(inst_, Matching(n_), cfg_.objective);
            costs_.assign(levels, 0);
        }

        if (cfg_.mode == SolveMode::decision) {
            search(cand_rank_, /*stage=*/0, /*stop_first=*/true);
        } else {
            for (int stage = 0; stage < levels && !timed_out_; ++stage) {
                if (stage > 0) ++stats_.restarts;
                stage_bound_ = incumbent_ ? std::optional<long long>(incumbent_vec_[stage])
                                          : std::nullopt;
                search(cand_rank_, stage, /*stop_first=*/false);
                if (timed_out_ || !incumbent_) break;
                fixed_.push_back(incumbent_vec_[stage]);
            }
            proven_ = !timed_out_;
            if (incumbent_ && proven_ && cfg_.deterministic) {
                // Reconstruction pass: the first leaf in id order under
                // equality bounds on every level is the optimal matching
                // with the lexicographically smallest serialized pair list.
                // A deadline here only skips canonicalization; the optimum
                // stays proven.
                ++stats_.restarts;
                canonical_mode_ = true;
                stage_bound_.reset();
                search(cand_id_, levels, /*stop_first=*/true);
                canonical_mode_ = false;
            }
        }

        SolveResult result;
        result.stats = stats_;
        result.events = std::move(events_);
        if (incumbent_) {
            result.matching = incumbent_;
            if (cfg_.mode == SolveMode::decision) {
                result.outcome = SolveOutcome::solution;
                if (!cfg_.objective.empty())
                    result.vector = objective_vector(inst_, *incumbent_, cfg_.objective);
                result.proven_optimal = cfg_.objective.empty();
            } else if (!proven_) {
                result.outcome = SolveOutcome::timeout;
                result.vector = incumbent_vec_;
            } else {
                result.outcome = SolveOutcome::solution;
                result.vector = incumbent_vec_;
                result.proven_optimal = true;
            }
        } else {
            result.outcome = timed_out_ ? SolveOutcome::timeout : SolveOutcome::unsat;
        }
        return result;
    }

  private:
    static constexpr int kRankInf = std::numeric_limits<int>::max();

    double elapsed_s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    bool deadline_hit() {
        if (timed_out_) return true;
        if (!deadline_ || (stats_.nodes & 0xFF) != 0) return false;
        if (std::chrono::steady_clock::now() >= *deadline_) timed_out_ = true;
        return timed_out_;
    }

    void search(const std::vector<std::vector<Agent>>& cand, int stage, bool stop_first) {
        partner_.assign(n_, -1);
        ub_.assign(n_, kRankInf);
        std::fill(costs_.begin(), costs_.end(), 0);
        trail_.clear();
        frames_.clear();
        dfs(cand, 0, stage, stop_first);
    }

    // Undecided agent with the fewest live options, smallest id on ties;
    // -1 when everyone is decided. An agent with zero options is returned
    // immediately so the branch dies right away.
    Agent select_agent() const {
        Agent best = -1;
        int best_count = std::numeric_limits<int>::max();
        for (Agent u : canonical_order_) {
            if (partner_[u] != -1) continue;
            int count = ub_[u] == kRankInf ? 1 : 0;
            if (count < best_count)
                for (Agent v : cand_rank_[u]) {
                    if (inst_.rank(u, v) > ub_[u]) break;
                    if (partner_[v] == -1 && inst_.rank(v, u) <= ub_[v]) {
                        if (++count >= best_count) break;
                    }
                }
            if (count < best_count) {
                best = u;
                best_count = count;
                if (count == 0) break;
            }
        }
        return best;
    }

    // Returns true to stop the whole pass (leaf accepted or deadline).
    bool dfs(const std::vector<std::vector<Agent>>& cand, int pos, int stage, bool stop_first) {
        if (deadline_hit()) return true;
        Agent x;
        if (canonical_mode_) {
            while (pos < n_ && partner_[canonical_order_[pos]] != -1) ++pos;
            if (pos == n_) return accept_leaf(stage, stop_first);
            x = canonical_order_[pos];
        } else {
            x = select_agent();
            if (x == -1) return accept_leaf(stage, stop_first);
        }
        for (Agent y : cand[x]) {
            if (partner_[y] != -1) continue;
            if (inst_.rank(x, y) > ub_[x] || inst_.rank(y, x) > ub_[y]) continue;
            bool stop = false;
            if (decide_pair(x, y, stage)) stop = dfs(cand, pos + 1, stage, stop_first);
            undo();
            if (stop) return true;
        }
        if (ub_[x] == kRankInf) {
            bool stop = false;
            if (decide_single(x)) stop = dfs(cand, pos + 1, stage, stop_first);
            undo();
            if (stop) return true;
        }
        return false;
    }

    bool accept_leaf(int stage, bool stop_first) {
        incumbent_ = snapshot();
        if (!canonical_mode_ && !costs_.empty()) {
            // Strict improvement at the stage level by construction of the
            // bound; lower levels sit at their fixed optima.
            incumbent_vec_ = costs_;
            stage_bound_ = costs_[stage];
            SolveEvent ev{elapsed_s(), incumbent_vec_};
            if (cfg_.on_improvement) cfg_.on_improvement(ev.elapsed_s, ev.vector);
            events_.push_back(std::move(ev));
        }
        return stop_first;
    }

    Matching snapshot() const {
        Matching m(n_);
        for (Agent a = 0; a < n_; ++a)
            if (partner_[a] != -1 && partner_[a] != a) m.set_pair(a, partner_[a]);
        return m;
    }

    struct Frame {
        size_t trail_pos;
        Agent x;
        Agent y;  // == x for a single decision
    };

    bool decide_pair(Agent x, Agent y, int stage) {
        ++stats_.nodes;
        frames_.push_back({trail_.size(), x, y});
        partner_[x] = y;
        partner_[y] = x;
        if (!costs_.empty()) {
            for (int l = 0; l < static_cast<int>(costs_.size()); ++l)
                costs_[l] += pair_cost(l, x, y);
            if (!bounds_ok(stage)) return false;
        }
        return propagate(x, inst_.rank(x, y)) && propagate(y, inst_.rank(y, x));
    }

    bool decide_single(Agent x) {
        ++stats_.nodes;
        frames_.push_back({trail_.size(), x, x});
        partner_[x] = x;
        return propagate(x, kRankInf);
    }

    // After deciding w with a partner at rank partner_rank (kRankInf when
    // single): every undecided mutually acceptable u that w strictly
    // prefers to its own assignment must end up with a partner u likes at
    // least as much as w, or the pair {w, u} blocks.
    bool propagate(Agent w, int partner_rank) {
        for (Agent u : acc_[w]) {
            if (partner_[u] != -1) continue;
            if (inst_.rank(w, u) >= partner_rank) continue;
            const int bound = inst_.rank(u, w);
            if (bound < ub_[u]) {
                trail_.push_back({u, ub_[u]});
                ub_[u] = bound;
                if (!viable(u)) return false;
            }
        }
        return true;
    }

    // Does u still have any option compatible with its rank bound?
    bool viable(Agent u) const {
        if (ub_[u] == kRankInf) return true;
        for (Agent v : cand_rank_[u]) {
            if (inst_.rank(u, v) > ub_[u]) break;
            if (partner_[v] == -1 && inst_.rank(v, u) <= ub_[v]) return true;
        }
        return false;
    }

    bool bounds_ok(int stage) const {
        for (size_t i = 0; i < fixed_.size(); ++i)
            if (costs_[i] > fixed_[i]) return false;
        if (!canonical_mode_ && stage_bound_ && costs_[stage] >= *stage_bound_) return false;
        return true;
    }

    long long pair_cost(int level, Agent x, Agent y) const {
        const ObjectiveLevel& l = cfg_.objective.levels[level];
        return ordered_pair_cost(inst_, l, x, y) + ordered_pair_cost(inst_, l, y, x);
    }

    void undo() {
        const Frame f = frames_.back();
        frames_.pop_back();
        while (trail_.size() > f.trail_pos) {
            ub_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
        if (f.y != f.x && !costs_.empty())
            for (int l = 0; l < static_cast<int>(costs_.size()); ++l)
                costs_[l] -= pair_cost(l, f.x, f.y);
        partner_[f.x] = -1;
        if (f.y != f.x) partner_[f.y] = -1;
    }

    const Instance& inst_;
    const SolveConfig& cfg_;
    int n_;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;

    std::vector<int> id_pos_;
    std::vector<std::vector<Agent>> acc_;        // mutually acceptable (blocking graph)
    std::vector<std::vector<Agent>> cand_rank_;  // matchable, by preference rank
    std::vector<std::vector<Agent>> cand_id_;    // matchable, by id
    std::vector<Agent> canonical_order_;  // agents in id order

    std::vector<int> partner_;
    std::vector<int> ub_;
    std::vector<std::pair<Agent, int>> trail_;
    std::vector<Frame> frames_;
    std::vector<long long> costs_;

    std::optional<long long> stage_bound_;
    std::vector<long long> fixed_;
    bool canonical_mode_ = false;
    bool timed_out_ = false;
    bool proven_ = false;

    std::optional<Matching> incumbent_;
    ObjectiveVector incumbent_vec_;
    std::vector<SolveEvent> events_;
    SolveStats stats_;
};

}  // namespace detail

inline SolveResult solve(const Instance& inst, const SolveConfig& cfg) {
    detail::SearchEngine engine(inst, cfg);
    return engine.run();
}

inline SolveResult solve_decision(const Instance& inst, SolveConfig cfg = {}) {
    cfg.mode = SolveMode::decision;
    return solve(inst, cfg);
}

inline SolveResult solve_optimize(const Instance& inst, SolveConfig cfg) {
    cfg.mode = SolveMode::optimize;
    return solve(inst, cfg);
}

}  // namespace srti
