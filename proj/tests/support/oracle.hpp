#pragma once

// Reference implementation for cross-checking the evaluator.
//
// Entailment is decided by truth tables, evidence sets are recomputed from
// scratch, and P follows the clause-by-clause definition with separate
// "proves" and "disproves" predicates.  Memoisation here keys on the whole
// history, so it shares no shortcut with the evaluator.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "plogic/algorithm.hpp"
#include "plogic/description.hpp"
#include "plogic/engine.hpp"

namespace oracle {

using namespace plogic;

inline void atoms_of(const Formula& f, std::set<Atom>& out) {
    if (f.is_literal()) {
        out.insert(f.literal().atom);
        return;
    }
    for (const auto& g : f.operands()) atoms_of(g, out);
}

inline bool holds(const Formula& f, const std::map<Atom, bool>& v) {
    switch (f.kind()) {
    case Formula::Kind::literal: return v.at(f.literal().atom) == f.literal().positive;
    case Formula::Kind::negation: return !holds(f.body(), v);
    case Formula::Kind::conjunction:
        for (const auto& g : f.operands())
            if (!holds(g, v)) return false;
        return true;
    case Formula::Kind::disjunction:
        for (const auto& g : f.operands())
            if (holds(g, v)) return true;
        return false;
    }
    return false;
}

/// Every assignment satisfying all of `premises` satisfies `goal`.
inline bool tt_entails(const std::vector<Formula>& premises, const Formula& goal) {
    std::set<Atom> atoms;
    for (const auto& p : premises) atoms_of(p, atoms);
    atoms_of(goal, atoms);
    std::vector<Atom> list(atoms.begin(), atoms.end());
    if (list.size() > 22) throw std::runtime_error("oracle: too many atoms for truth tables");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << list.size()); ++m) {
        std::map<Atom, bool> v;
        for (std::size_t i = 0; i < list.size(); ++i) v[list[i]] = (m >> i) & 1u;
        bool all = true;
        for (const auto& p : premises)
            if (!holds(p, v)) {
                all = false;
                break;
            }
        if (all && !holds(goal, v)) return false;
    }
    return true;
}

class Oracle {
public:
    explicit Oracle(const PlausibleDescription& d) : d_(d) {
        for (const auto& c : d.axioms()) ax_.push_back(c.as_formula());
    }

    bool fact(const Formula& f) {
        auto key = to_string(f);
        auto it = facts_.find(key);
        if (it != facts_.end()) return it->second;
        return facts_[key] = tt_entails(ax_, f);
    }

    /// R[f] (all kinds) or R_sd[f], from the definition.
    std::vector<InstanceId> evidence(const Formula& f, bool strict_defeasible_only) {
        auto key = std::make_pair(to_string(f), strict_defeasible_only);
        auto it = evidence_.find(key);
        if (it != evidence_.end()) return it->second;
        std::vector<InstanceId> out;
        if (fact(f)) return evidence_[key] = out;
        for (InstanceId id = 0; id < d_.instance_count(); ++id) {
            const auto& r = d_.instance(id).rule;
            if (strict_defeasible_only && r.kind == RuleKind::warning) continue;
            auto with = ax_;
            with.push_back(r.consequent);
            if (!satisfiable(with)) continue;
            if (tt_entails(with, f)) out.push_back(id);
        }
        return evidence_[key] = out;
    }

    std::vector<InstanceId> foe(Algorithm a, const Formula& f, InstanceId r) {
        if (a == Algorithm::phi || a == Algorithm::pi_prime) return {};
        auto all = evidence(negate(f), false);
        if (a != Algorithm::psi_prime) return all;
        std::vector<InstanceId> out;
        for (auto s : all)
            if (d_.superior(s, r)) out.push_back(s);
        return out;
    }

    using H = std::vector<std::pair<Algorithm, InstanceId>>;

    /// +1 or -1; throws if both or neither predicate holds.
    int value(Algorithm a, const H& h, const Formula& f) {
        const bool yes = proves(a, h, f);
        const bool no = disproves(a, h, f);
        if (yes == no) throw std::logic_error("oracle: P is not a function at " + to_string(f));
        return yes ? 1 : -1;
    }

    int value(Algorithm a, const Formula& f) { return value(a, H{}, f); }

    bool proves(Algorithm a, const H& h, const std::vector<Formula>& fs) {
        for (const auto& f : fs)
            if (!proves(a, h, f)) return false;
        return true;
    }

    bool disproves(Algorithm a, const H& h, const std::vector<Formula>& fs) {
        for (const auto& f : fs)
            if (disproves(a, h, f)) return true;
        return false;
    }

    bool proves(Algorithm a, const H& h, const Formula& f) { return cached(true, a, h, f); }
    bool disproves(Algorithm a, const H& h, const Formula& f) { return cached(false, a, h, f); }

private:
    static bool in(const H& h, Algorithm a, InstanceId r) {
        for (const auto& e : h)
            if (e.first == a && e.second == r) return true;
        return false;
    }

    static H plus(const H& h, Algorithm a, InstanceId r) {
        H out = h;
        out.emplace_back(a, r);
        return out;
    }

    bool satisfiable(const std::vector<Formula>& fs) {
        // Unsatisfiable iff it entails an atom and its negation.
        const Formula probe(positive(prop("__probe")));
        return !(tt_entails(fs, probe) && tt_entails(fs, negate(probe)));
    }

    const FormulaSet& ants(InstanceId r) const { return d_.instance(r).rule.antecedents; }

    bool cached(bool want_proof, Algorithm a, const H& h, const Formula& f) {
        H sorted = h;
        std::sort(sorted.begin(), sorted.end());
        auto key = std::make_tuple(want_proof, a, sorted, to_string(f));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool v = want_proof ? proves_raw(a, h, f) : disproves_raw(a, h, f);
        memo_[key] = v;
        return v;
    }

    // Proof clauses for a single formula.
    bool proves_raw(Algorithm a, const H& h, const Formula& f) {
        if (a == Algorithm::phi) return fact(f);
        if (fact(f)) return true;
        const Algorithm co = co_algorithm(a);
        const auto team = evidence(f, true);
        for (auto r : team) {
            if (in(h, a, r) || !proves(a, plus(h, a, r), ants(r))) continue;
            bool every_foe_handled = true;
            for (auto s : foe(a, f, r)) {
                bool team_defeat = false;
                for (auto t : team)
                    if (d_.superior(t, s) && !in(h, a, t) && proves(a, plus(h, a, t), ants(t))) {
                        team_defeat = true;
                        break;
                    }
                const bool disabled = !in(h, co, s) && disproves(co, plus(h, co, s), ants(s));
                if (!team_defeat && !disabled) {
                    every_foe_handled = false;
                    break;
                }
            }
            if (every_foe_handled) return true;
        }
        return false;
    }

    // Disproof clauses for a single formula.
    bool disproves_raw(Algorithm a, const H& h, const Formula& f) {
        if (a == Algorithm::phi) return !fact(f);
        if (fact(f)) return false;
        const Algorithm co = co_algorithm(a);
        const auto team = evidence(f, true);
        for (auto r : team) {
            const bool unsupported = in(h, a, r) || disproves(a, plus(h, a, r), ants(r));
            if (unsupported) continue;
            bool some_foe_stands = false;
            for (auto s : foe(a, f, r)) {
                bool no_team_defeat = true;
                for (auto t : team)
                    if (d_.superior(t, s) && !(in(h, a, t) || disproves(a, plus(h, a, t), ants(t)))) {
                        no_team_defeat = false;
                        break;
                    }
                const bool not_disabled = in(h, co, s) || proves(co, plus(h, co, s), ants(s));
                if (no_team_defeat && not_disabled) {
                    some_foe_stands = true;
                    break;
                }
            }
            if (!some_foe_stands) return false;
        }
        return true;
    }

    const PlausibleDescription& d_;
    std::vector<Formula> ax_;
    std::map<std::string, bool> facts_;
    std::map<std::pair<std::string, bool>, std::vector<InstanceId>> evidence_;
    std::map<std::tuple<bool, Algorithm, H, std::string>, bool> memo_;
};

}  // namespace oracle
