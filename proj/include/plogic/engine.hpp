#pragma once

// The proof function with its support and defeat helpers, evaluated as
// nested max/min with deterministic short-circuiting.
//
// Memoisation.  The value of P(a, H, f) depends on H only through the
// membership tests the evaluation performs.  Every formula-level evaluation
// records the (entry, present?) answers it observed, including those of its
// sub-evaluations minus the entry pushed on the way down.  A stored value is
// reused whenever the current history gives the same answers to every
// recorded test; the evaluation it stands for would then retrace the same
// path and reach the same value.
//
// A second mode keys stored values on the whole history instead.  It shares
// no reasoning with the first and serves as a cross-check on it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "plogic/algorithm.hpp"
#include "plogic/description.hpp"
#include "plogic/syntax.hpp"

namespace plogic {

/// Raised when an internal invariant breaks, e.g. a history carrying a tag
/// that belongs to neither the algorithm nor its co-algorithm.
class InvariantError : public Error {
public:
    using Error::Error;
};

enum class ProofValue : std::int8_t { minus = -1, plus = 1 };

constexpr ProofValue operator-(ProofValue v) { return v == ProofValue::plus ? ProofValue::minus : ProofValue::plus; }
constexpr int to_int(ProofValue v) { return static_cast<int>(v); }
inline std::string to_string(ProofValue v) { return v == ProofValue::plus ? "+1" : "-1"; }

struct HistoryEntry {
    Algorithm tag;
    InstanceId instance;

    auto operator<=>(const HistoryEntry&) const = default;
};

/// A repeat-free sequence of (algorithm, instance) pairs.
class History {
public:
    History() = default;

    std::span<const HistoryEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(HistoryEntry e) const { return std::find(entries_.begin(), entries_.end(), e) != entries_.end(); }
    const HistoryEntry& back() const { return entries_.back(); }

    /// H + e.
    History extended(HistoryEntry e) const {
        if (contains(e)) throw InvariantError("history already contains the entry being added");
        History h = *this;
        h.entries_.push_back(e);
        return h;
    }

    bool operator==(const History&) const = default;

private:
    std::vector<HistoryEntry> entries_;
};

enum class MemoMode : unsigned char {
    observed,      // reuse when the history answers the recorded tests alike
    full_history,  // reuse only under the same set of history entries
    none,
};

struct EvaluationOptions {
    MemoMode memo = MemoMode::observed;
};

struct EvaluationStats {
    std::size_t formula_frames = 0;  // formula-level evaluations actually performed
    std::size_t memo_hits = 0;
    std::size_t max_depth = 0;       // deepest nesting of formula-level frames
    std::size_t depth_bound = 0;     // 2 * |R Sigma| + 4
};

/// Evaluates proof, support and defeat values on one description.  Holds memo tables, so one
/// evaluator should serve one thread; the description itself may be shared.
class Evaluator {
public:
    explicit Evaluator(const PlausibleDescription& d, EvaluationOptions options = {})
        : d_(&d), options_(options), present_(algorithm_count * d.instance_count(), 0) {
        stats_.depth_bound = 2 * d.instance_count() + 4;
    }

    const PlausibleDescription& description() const { return *d_; }
    const EvaluationStats& stats() const { return stats_; }

    /// P(a, (), f).
    ProofValue prove(Algorithm a, const Formula& f) { return evaluate(a, History{}, f); }

    ProofValue evaluate(Algorithm a, const History& h, const Formula& f) {
        Scope scope(*this, a, h);
        Deps sink;
        return eval_formula(a, intern(f), sink);
    }

    ProofValue evaluate(Algorithm a, const History& h, std::span<const Formula> fs) {
        Scope scope(*this, a, h);
        std::vector<std::size_t> ids;
        for (const auto& f : fs) ids.push_back(intern(f));
        Deps sink;
        for (auto id : ids)
            if (eval_formula(a, id, sink) == ProofValue::minus) return ProofValue::minus;
        return ProofValue::plus;
    }

    ProofValue evaluate_support(Algorithm a, const History& h, const Formula& f, InstanceId r) {
        Scope scope(*this, a, h);
        auto id = intern(f);
        require_for_domain(a, id, r);
        Deps sink;
        return eval_for(a, id, r, sink);
    }

    ProofValue evaluate_defeat(Algorithm a, const History& h, const Formula& f, InstanceId r, InstanceId s) {
        Scope scope(*this, a, h);
        auto id = intern(f);
        require_for_domain(a, id, r);
        auto foes = foe_of(a, id, r);
        if (std::find(foes.begin(), foes.end(), s) == foes.end())
            throw PreconditionError("defeat value: " + d_->label(s) + " is not a foe of " + d_->label(r));
        Deps sink;
        return eval_dftd(a, id, s, sink);
    }

    /// Foe(a, f, r) through the evaluator's caches.
    std::vector<InstanceId> foe(Algorithm a, const Formula& f, InstanceId r) {
        auto id = intern(f);
        require_for_domain(a, id, r);
        return foe_of(a, id, r);
    }

private:
    // Sorted list of observed membership answers: entry index * 2 + present.
    using Deps = std::vector<std::uint32_t>;

    struct FormulaInfo {
        Formula formula;
        bool fact = false;
        std::vector<InstanceId> team;    // R_sd[f]
        std::vector<InstanceId> rivals;  // R[~f]
    };

    struct Record {
        Deps deps;
        ProofValue value;
    };

    // Loads a caller-supplied history into the membership table for the
    // duration of one public call.
    class Scope {
    public:
        Scope(Evaluator& e, Algorithm a, const History& h) : e_(e) {
            if (e_.active_) throw InvariantError("evaluator re-entered");
            const auto co = co_algorithm(a);
            std::set<HistoryEntry> seen;
            for (const auto& entry : h.entries()) {
                if (entry.tag != a && entry.tag != co)
                    throw InvariantError("history entry tagged " + std::string(name(entry.tag)) + " in a " +
                                         std::string(name(a)) + "-history");
                if (entry.instance >= e_.d_->instance_count()) throw InvariantError("history entry names no instance");
                if (!seen.insert(entry).second) throw InvariantError("history repeats an entry");
            }
            for (const auto& entry : h.entries()) {
                e_.present_[e_.index(entry)] = 1;
                e_.stack_.push_back(e_.index(entry));
            }
            entries_ = h.entries();
            e_.active_ = true;
            e_.depth_ = 0;
        }
        ~Scope() {
            for (const auto& entry : entries_) e_.present_[e_.index(entry)] = 0;
            e_.stack_.clear();
            e_.active_ = false;
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        Evaluator& e_;
        std::span<const HistoryEntry> entries_;
    };

    std::uint32_t index(HistoryEntry e) const {
        return static_cast<std::uint32_t>(index_of(e.tag) * d_->instance_count() + e.instance);
    }

    bool member(HistoryEntry e, Deps& deps) const {
        auto i = index(e);
        bool in = present_[i] != 0;
        deps.push_back(i * 2 + (in ? 1u : 0u));
        return in;
    }

    std::size_t intern(const Formula& f) {
        auto it = ids_.find(f);
        if (it != ids_.end()) return it->second;
        if (!is_ground(f)) throw PreconditionError("formula is not ground: " + to_string(f));
        FormulaInfo info;
        info.formula = f;
        info.fact = d_->is_fact(f);
        if (!info.fact) {
            info.team = d_->supporters(f, Evidence::strict_and_defeasible);
            info.rivals = d_->supporters(negate(f), Evidence::all);
            if (d_->has_priorities()) {
                auto wf = d_->check_well_founded(f);
                if (!wf.ok) {
                    std::string msg = "priority relation is not well-founded on " + to_string(f) + ": ";
                    for (std::size_t i = 0; i < wf.witness.size(); ++i)
                        msg += (i ? " , " : "") + d_->label(wf.witness[i]);
                    throw DescriptionError(msg + " , ...");
                }
            }
        }
        auto id = infos_.size();
        infos_.push_back(std::move(info));
        ids_.emplace(f, id);
        return id;
    }

    std::vector<std::size_t> antecedents(InstanceId r) {
        if (antecedent_ids_.empty()) antecedent_ids_.resize(d_->instance_count());
        if (!antecedent_ids_[r]) {
            std::vector<std::size_t> ids;
            for (const auto& g : d_->instance(r).rule.antecedents) ids.push_back(intern(g));
            antecedent_ids_[r] = std::move(ids);
        }
        return *antecedent_ids_[r];
    }

    void require_for_domain(Algorithm a, std::size_t id, InstanceId r) const {
        const auto& info = infos_[id];
        if (a == Algorithm::phi) throw PreconditionError("support and defeat values are undefined for phi");
        if (info.fact) throw PreconditionError("support and defeat values are undefined on facts: " + to_string(info.formula));
        if (std::find(info.team.begin(), info.team.end(), r) == info.team.end())
            throw PreconditionError(d_->label(r) + " is not in R_sd[" + to_string(info.formula) + "]");
    }

    std::vector<InstanceId> foe_of(Algorithm a, std::size_t id, InstanceId r) const {
        const auto& info = infos_[id];
        switch (a) {
        case Algorithm::phi:
        case Algorithm::pi_prime: return {};
        case Algorithm::psi_prime: {
            std::vector<InstanceId> out;
            for (auto s : info.rivals)
                if (d_->superior(s, r)) out.push_back(s);
            return out;
        }
        default: return info.rivals;
        }
    }

    static void normalise(Deps& deps) {
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    }

    // Best support over the team; phi and facts short-cut.
    ProofValue eval_formula(Algorithm a, std::size_t id, Deps& out) {
        if (a == Algorithm::phi || infos_[id].fact)
            return infos_[id].fact ? ProofValue::plus : ProofValue::minus;

        const auto key = std::pair{a, id};
        std::vector<std::uint32_t> whole;
        if (options_.memo == MemoMode::full_history) {
            whole = stack_;
            std::sort(whole.begin(), whole.end());
            auto it = by_history_.find({a, id, whole});
            if (it != by_history_.end()) {
                ++stats_.memo_hits;
                return it->second;
            }
        }
        if (options_.memo == MemoMode::observed) {
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                for (const auto& rec : it->second) {
                    bool match = std::all_of(rec.deps.begin(), rec.deps.end(), [&](std::uint32_t d) {
                        return (present_[d / 2] != 0) == ((d & 1u) != 0);
                    });
                    if (!match) continue;
                    ++stats_.memo_hits;
                    out.insert(out.end(), rec.deps.begin(), rec.deps.end());
                    return rec.value;
                }
            }
        }

        ++stats_.formula_frames;
        ++depth_;
        stats_.max_depth = std::max(stats_.max_depth, depth_);
        if (depth_ > stats_.depth_bound)
            throw InvariantError("evaluation depth " + std::to_string(depth_) + " exceeds bound " +
                                 std::to_string(stats_.depth_bound));

        Deps mine;
        ProofValue value = ProofValue::minus;
        // Copy: interning during recursion may grow infos_.
        const auto team = infos_[id].team;
        for (auto r : team)
            if (eval_for(a, id, r, mine) == ProofValue::plus) {
                value = ProofValue::plus;
                break;
            }
        --depth_;

        normalise(mine);
        out.insert(out.end(), mine.begin(), mine.end());
        if (options_.memo == MemoMode::observed) memo_[key].push_back(Record{std::move(mine), value});
        if (options_.memo == MemoMode::full_history) by_history_.emplace(std::tuple{a, id, std::move(whole)}, value);
        return value;
    }

    // Antecedents of r under `tag`, with e pushed for the duration.
    ProofValue eval_antecedents(Algorithm tag, HistoryEntry e, InstanceId r, Deps& out) {
        const auto ids = antecedents(r);
        const auto pushed = index(e);
        present_[pushed] = 1;
        stack_.push_back(pushed);
        Deps child;
        ProofValue value = ProofValue::plus;
        try {
            for (auto id : ids)
                if (eval_formula(tag, id, child) == ProofValue::minus) {
                    value = ProofValue::minus;
                    break;
                }
        } catch (...) {
            present_[pushed] = 0;
            stack_.pop_back();
            throw;
        }
        present_[pushed] = 0;
        stack_.pop_back();
        for (auto d : child)
            if (d / 2 != pushed) out.push_back(d);
        return value;
    }

    // Blocked by history, else min of antecedents and each foe's defeat.
    ProofValue eval_for(Algorithm a, std::size_t id, InstanceId r, Deps& out) {
        const HistoryEntry e{a, r};
        if (member(e, out)) return ProofValue::minus;
        if (eval_antecedents(a, e, r, out) == ProofValue::minus) return ProofValue::minus;
        for (auto s : foe_of(a, id, r))
            if (eval_dftd(a, id, s, out) == ProofValue::minus) return ProofValue::minus;
        return ProofValue::plus;
    }

    // Team defeat first, then disabling.
    ProofValue eval_dftd(Algorithm a, std::size_t id, InstanceId s, Deps& out) {
        const auto team = infos_[id].team;
        for (auto t : team) {
            if (!d_->superior(t, s)) continue;
            const HistoryEntry e{a, t};
            if (member(e, out)) continue;
            if (eval_antecedents(a, e, t, out) == ProofValue::plus) return ProofValue::plus;
        }
        const auto co = co_algorithm(a);
        const HistoryEntry e{co, s};
        if (!member(e, out) && eval_antecedents(co, e, s, out) == ProofValue::minus) return ProofValue::plus;
        return ProofValue::minus;
    }

    const PlausibleDescription* d_;
    EvaluationOptions options_;
    EvaluationStats stats_;
    std::vector<char> present_;
    std::vector<std::uint32_t> stack_;  // indices of the entries in present_
    bool active_ = false;
    std::size_t depth_ = 0;
    std::map<Formula, std::size_t> ids_;
    std::vector<FormulaInfo> infos_;
    std::vector<std::optional<std::vector<std::size_t>>> antecedent_ids_;
    std::map<std::pair<Algorithm, std::size_t>, std::vector<Record>> memo_;
    std::map<std::tuple<Algorithm, std::size_t, std::vector<std::uint32_t>>, ProofValue> by_history_;
};

/// Partition of a query universe by the value of P with empty history.
struct ProvableSet {
    std::vector<Formula> proved;
    std::vector<Formula> disproved;
};

inline ProvableSet provable_set(Evaluator& ev, Algorithm a, std::span<const Formula> queries) {
    ProvableSet out;
    for (const auto& q : queries) (ev.prove(a, q) == ProofValue::plus ? out.proved : out.disproved).push_back(q);
    return out;
}

inline ProvableSet provable_set(const PlausibleDescription& d, Algorithm a, std::span<const Formula> queries) {
    Evaluator ev(d);
    return provable_set(ev, a, queries);
}

}  // namespace plogic
