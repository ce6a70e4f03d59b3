#pragma once

// Plausible-descriptions: axioms, rules and a priority relation on ground
// rule-instances, plus the evidence queries the proof function is built on.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plogic/algorithm.hpp"
#include "plogic/classical.hpp"
#include "plogic/syntax.hpp"

namespace plogic {

using InstanceId = std::uint32_t;

/// Raised when a description cannot be built: unsatisfiable axioms, user
/// strict rules, bad priorities, ill-founded priorities and so on.
class DescriptionError : public Error {
public:
    using Error::Error;
};

/// Raised when an operation is called outside the domain it is defined on.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Clause compilation
// ---------------------------------------------------------------------------

/// Name suffix recording which literals of a clause form the consequent,
/// e.g. "k1_3" for the first and third literal (1-based, canonical order).
inline std::string consequent_signature(const std::vector<std::size_t>& positions) {
    std::string s = "k";
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i) s += '_';
        s += std::to_string(positions[i] + 1);
    }
    return s;
}

/// Converts a clause with n literals into its 2^n - 1 strict rules: one rule
/// per non-empty subset K of the literals, concluding the disjunction of K
/// from the negation of the remaining literals.  Rule names are consequent
/// signatures.
inline std::vector<Rule> clause_rules(const Clause& c) {
    if (c.empty()) throw DescriptionError("an empty clause has no rules");
    const auto& lits = c.literals();
    const std::size_t n = lits.size();
    if (n > 20) throw DescriptionError("clause too long to compile into strict rules");
    std::vector<Rule> out;
    out.reserve((std::size_t{1} << n) - 1);
    // Order: larger consequents first, then lexicographic positions, so the
    // unconditional rule {} -> OR L comes first.
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> k;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) k.push_back(i);
        subsets.push_back(std::move(k));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size() || (a.size() == b.size() && a < b); });
    for (const auto& k : subsets) {
        std::vector<Formula> head, rest;
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (j < k.size() && k[j] == i) {
                head.emplace_back(lits[i]);
                ++j;
            } else {
                rest.emplace_back(lits[i].negated());
            }
        }
        FormulaSet ants;
        if (rest.size() == 1) ants.push_back(rest.front());
        else if (rest.size() > 1) ants.push_back(Formula::conjunction(std::move(rest)));
        Formula consequent = head.size() == 1 ? head.front() : Formula::disjunction(std::move(head));
        out.emplace_back(consequent_signature(k), RuleKind::strict, std::move(ants), std::move(consequent));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

/// Calls fn(sigma) for every map from `vars` into `constants`, in
/// lexicographic order of the images.
template <class Fn>
void for_each_grounding(const std::set<std::string>& vars, const std::vector<std::string>& constants, Fn&& fn) {
    std::vector<std::string> names(vars.begin(), vars.end());
    if (names.empty()) {
        fn(Substitution{});
        return;
    }
    if (constants.empty()) return;
    std::vector<std::size_t> pick(names.size(), 0);
    while (true) {
        Substitution s;
        for (std::size_t i = 0; i < names.size(); ++i) s.bind(names[i], constants[pick[i]]);
        fn(s);
        std::size_t i = names.size();
        while (i > 0) {
            --i;
            if (++pick[i] < constants.size()) break;
            pick[i] = 0;
            if (i == 0) return;
        }
    }
}

/// R Sigma for a set of rules: every instance r sigma with Doc(sigma) = Var(r).
/// A ground rule contributes exactly itself.
inline std::vector<RuleInstance> ground(std::span<const Rule> rules, const std::vector<std::string>& constants) {
    std::vector<RuleInstance> out;
    for (const auto& r : rules)
        for_each_grounding(free_vars(r), constants,
                           [&](const Substitution& s) { out.push_back(apply_substitution(r, s)); });
    return out;
}

// ---------------------------------------------------------------------------
// Description input
// ---------------------------------------------------------------------------

/// `prefer superior > inferior`, optionally pinned to single instances.
struct PriorityStatement {
    std::string superior;
    std::optional<Substitution> superior_at;
    std::string inferior;
    std::optional<Substitution> inferior_at;

    bool operator==(const PriorityStatement&) const = default;
};

/// Everything a description file declares, before compilation.
struct DescriptionSpec {
    std::vector<std::string> constants;
    std::vector<Formula> axioms;  // universally closed; split into clauses on build
    std::vector<Rule> rules;      // defeasible and warning rules only
    std::vector<PriorityStatement> priorities;
};

enum class Evidence : unsigned char { all, strict_and_defeasible };

/// Outcome of a well-foundedness check on one formula.  On failure the
/// witness is one period of an alternating sequence r1, s2, r3, s4, ...
/// that repeats forever.
struct WellFoundedness {
    bool ok = true;
    std::vector<InstanceId> witness;
};

// ---------------------------------------------------------------------------
// PlausibleDescription
// ---------------------------------------------------------------------------

class PlausibleDescription {
public:
    friend PlausibleDescription build_description(DescriptionSpec spec);

    const DescriptionSpec& spec() const { return *spec_; }
    /// Ground instances of the clauses of the axioms.
    const ClauseSet& axioms() const { return *axioms_; }
    /// Clause schemas of the axioms, before grounding.
    const ClauseSet& axiom_clauses() const { return *axiom_clauses_; }
    const std::vector<std::string>& constants() const { return *constants_; }

    /// R Sigma in canonical order: strict instances first, then user rules in
    /// declaration order.
    std::span<const RuleInstance> instances() const { return *instances_; }
    const RuleInstance& instance(InstanceId id) const { return (*instances_)[id]; }
    std::size_t instance_count() const { return instances_->size(); }
    RuleKind kind(InstanceId id) const { return instance(id).rule.kind; }

    /// Instance label used in certificates and messages, e.g. "r1[X=b]".
    std::string label(InstanceId id) const {
        const auto& ri = instance(id);
        return ri.base + to_string(ri.substitution);
    }

    std::optional<InstanceId> find(const std::string& base, const Substitution& s) const {
        auto it = by_name_->find({base, s});
        if (it == by_name_->end()) return std::nullopt;
        return it->second;
    }

    bool has_rule(const std::string& base) const { return base_vars_->count(base) > 0; }

    const std::vector<std::pair<InstanceId, InstanceId>>& priority_pairs() const { return *pairs_; }
    bool has_priorities() const { return !pairs_->empty(); }

    /// a > b.
    bool superior(InstanceId a, InstanceId b) const { return (*above_)[b].count(a) > 0; }
    const std::set<InstanceId>& superiors_of(InstanceId b) const { return (*above_)[b]; }

    /// Ax |= f.
    bool is_fact(const Formula& f) const { return evidence(f).fact; }

    /// R[f] or R_sd[f]: instances whose consequent, consistently with Ax,
    /// implies f.  Empty whenever f is a fact.
    const std::vector<InstanceId>& supporters(const Formula& f, Evidence which) const {
        const auto& e = evidence(f);
        return which == Evidence::all ? e.all : e.strict_defeasible;
    }

    /// R_sd[f] restricted to instances superior to s.
    std::vector<InstanceId> superior_supporters(const Formula& f, InstanceId s) const {
        std::vector<InstanceId> out;
        const auto& above = superiors_of(s);
        for (auto t : supporters(f, Evidence::strict_and_defeasible))
            if (above.count(t)) out.push_back(t);
        return out;
    }

    /// Ax together with the consequent of the instance is satisfiable.
    bool consistent(InstanceId id) const { return (*consistent_)[id]; }

    WellFoundedness check_well_founded(const Formula& f) const;

private:
    struct EvidenceSets {
        bool fact = false;
        std::vector<InstanceId> all;
        std::vector<InstanceId> strict_defeasible;
    };

    struct Cache {
        std::mutex mutex;
        std::map<Formula, std::shared_ptr<const EvidenceSets>> evidence;
    };

    PlausibleDescription() = default;

    const EvidenceSets& evidence(const Formula& f) const {
        {
            std::lock_guard lock(cache_->mutex);
            auto it = cache_->evidence.find(f);
            if (it != cache_->evidence.end()) return *it->second;
        }
        auto computed = std::make_shared<const EvidenceSets>(compute_evidence(f));
        std::lock_guard lock(cache_->mutex);
        auto [it, inserted] = cache_->evidence.emplace(f, std::move(computed));
        return *it->second;
    }

    EvidenceSets compute_evidence(const Formula& f) const {
        if (!is_ground(f)) throw PreconditionError("evidence is only defined for ground formulas: " + to_string(f));
        EvidenceSets e;
        const auto refutation = to_cnf(negate(f));
        std::span<const Clause> ax(*axioms_), neg(refutation);
        e.fact = !classical::is_satisfiable({ax, neg});
        if (e.fact) return e;
        for (InstanceId id = 0; id < instances_->size(); ++id) {
            if (!(*consistent_)[id]) continue;
            std::span<const Clause> head((*consequent_cnf_)[id]);
            if (classical::is_satisfiable({ax, head, neg})) continue;
            e.all.push_back(id);
            if (kind(id) != RuleKind::warning) e.strict_defeasible.push_back(id);
        }
        return e;
    }

    // Shared so that copies of a description are cheap and share caches.
    std::shared_ptr<const DescriptionSpec> spec_;
    std::shared_ptr<const ClauseSet> axioms_;
    std::shared_ptr<const ClauseSet> axiom_clauses_;
    std::shared_ptr<const std::vector<std::string>> constants_;
    std::shared_ptr<const std::vector<RuleInstance>> instances_;
    std::shared_ptr<const std::vector<ClauseSet>> consequent_cnf_;
    std::shared_ptr<const std::vector<bool>> consistent_;
    std::shared_ptr<const std::map<std::pair<std::string, Substitution>, InstanceId>> by_name_;
    std::shared_ptr<const std::map<std::string, std::set<std::string>>> base_vars_;
    std::shared_ptr<const std::vector<std::pair<InstanceId, InstanceId>>> pairs_;
    std::shared_ptr<const std::vector<std::set<InstanceId>>> above_;
    std::shared_ptr<Cache> cache_;
};

inline WellFoundedness PlausibleDescription::check_well_founded(const Formula& f) const {
    WellFoundedness result;
    if (!has_priorities()) return result;
    const auto& team = supporters(f, Evidence::strict_and_defeasible);
    const auto& rivals = supporters(negate(f), Evidence::strict_and_defeasible);
    if (team.empty() || rivals.empty()) return result;

    // Composed relation on the team: r -> r2 when r2 > s > r for a rival s.
    // Each edge remembers one such s for the witness.
    std::map<InstanceId, std::vector<std::pair<InstanceId, InstanceId>>> edges;
    std::set<InstanceId> team_set(team.begin(), team.end());
    for (auto r : team)
        for (auto s : rivals) {
            if (!superior(s, r)) continue;
            for (auto r2 : superiors_of(s))
                if (team_set.count(r2)) edges[r].emplace_back(r2, s);
        }

    enum class Mark : unsigned char { fresh, active, done };
    std::map<InstanceId, Mark> mark;
    std::vector<std::pair<InstanceId, InstanceId>> stack;  // (node, rival used to reach it)

    std::function<bool(InstanceId)> dfs = [&](InstanceId r) -> bool {
        mark[r] = Mark::active;
        for (auto [r2, s] : edges[r]) {
            if (mark[r2] == Mark::active) {
                // Cycle: from r2 along the stack to r, then back to r2 via s.
                std::size_t start = 0;
                while (stack[start].first != r2) ++start;
                for (std::size_t i = start; i < stack.size(); ++i) {
                    if (i > start) result.witness.push_back(stack[i].second);
                    result.witness.push_back(stack[i].first);
                }
                result.witness.push_back(s);
                return true;
            }
            if (mark[r2] == Mark::fresh) {
                stack.emplace_back(r2, s);
                if (dfs(r2)) return true;
                stack.pop_back();
            }
        }
        mark[r] = Mark::done;
        return false;
    };

    for (auto r : team) {
        if (mark[r] != Mark::fresh) continue;
        stack.assign(1, {r, r});
        if (dfs(r)) {
            result.ok = false;
            return result;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Foe
// ---------------------------------------------------------------------------

/// The instances algorithm `a` treats as evidence against f when f is
/// supported by r.
inline std::vector<InstanceId> foe(const PlausibleDescription& d, Algorithm a, const Formula& f, InstanceId r) {
    const auto& team = d.supporters(f, Evidence::strict_and_defeasible);
    if (std::find(team.begin(), team.end(), r) == team.end())
        throw PreconditionError("foe: " + d.label(r) + " is not evidence for " + to_string(f));
    switch (a) {
    case Algorithm::phi:
    case Algorithm::pi_prime: return {};
    case Algorithm::psi_prime: {
        std::vector<InstanceId> out;
        for (auto s : d.supporters(negate(f), Evidence::all))
            if (d.superior(s, r)) out.push_back(s);
        return out;
    }
    default: return d.supporters(negate(f), Evidence::all);
    }
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

namespace detail {

inline void collect_constants(const Formula& f, std::set<std::string>& out) {
    if (f.is_literal()) {
        for (const auto& t : f.literal().atom.args)
            if (!t.is_variable()) out.insert(t.name);
        return;
    }
    for (const auto& g : f.operands()) collect_constants(g, out);
}

inline void check_arity(const Formula& f, std::map<std::string, std::size_t>& arity) {
    if (f.is_literal()) {
        const auto& a = f.literal().atom;
        auto [it, inserted] = arity.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw DescriptionError("predicate " + a.predicate + " used with arity " + std::to_string(a.arity()) +
                                   " and " + std::to_string(it->second));
        return;
    }
    for (const auto& g : f.operands()) check_arity(g, arity);
}

/// Deletion-based minimal unsatisfiable subset.
inline ClauseSet minimal_conflict(ClauseSet cs) {
    for (std::size_t i = 0; i < cs.size();) {
        ClauseSet without = cs;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
        if (!classical::is_satisfiable(without)) cs = std::move(without);
        else ++i;
    }
    return cs;
}

}  // namespace detail

/// Compiles a description: grounds the axioms and checks they are
/// satisfiable, compiles them into strict rules, grounds every rule, expands
/// the priority statements and checks well-foundedness on every rule
/// consequent and its negation.
inline PlausibleDescription build_description(DescriptionSpec spec) {
    PlausibleDescription d;

    // Constant domain: declared constants plus any appearing in the input.
    std::set<std::string> consts(spec.constants.begin(), spec.constants.end());
    std::map<std::string, std::size_t> arity;
    for (const auto& a : spec.axioms) {
        detail::collect_constants(a, consts);
        detail::check_arity(a, arity);
    }
    std::set<std::string> names;
    for (const auto& r : spec.rules) {
        if (r.kind == RuleKind::strict)
            throw DescriptionError("rule " + r.name + ": strict rules come only from axioms and cannot be written directly");
        if (!names.insert(r.name).second) throw DescriptionError("duplicate rule name " + r.name);
        for (const auto& f : r.antecedents) {
            detail::collect_constants(f, consts);
            detail::check_arity(f, arity);
        }
        detail::collect_constants(r.consequent, consts);
        detail::check_arity(r.consequent, arity);
    }
    std::vector<std::string> constants(consts.begin(), consts.end());

    // Basic sentences.
    ClauseSet schemas;
    for (const auto& a : spec.axioms)
        for (auto& c : to_cnf(a)) schemas.push_back(std::move(c));
    {
        // Set semantics, keeping first-occurrence order for naming.
        ClauseSet unique;
        std::set<Clause> seen;
        for (auto& c : schemas)
            if (seen.insert(c).second) unique.push_back(std::move(c));
        schemas = std::move(unique);
    }
    ClauseSet ground_axioms;
    for (const auto& c : schemas) {
        std::set<std::string> vars;
        for (const auto& l : c.literals())
            for (const auto& t : l.atom.args)
                if (t.is_variable()) vars.insert(t.name);
        if (!vars.empty() && constants.empty())
            throw DescriptionError("axiom " + to_string(c) + " has variables but there are no constants");
        for_each_grounding(vars, constants, [&](const Substitution& s) { ground_axioms.push_back(substitute(c, s)); });
    }
    ground_axioms = make_clause_set(std::move(ground_axioms));
    if (!classical::is_satisfiable(ground_axioms)) {
        std::string msg = "axioms are unsatisfiable; conflicting clauses:";
        for (const auto& c : detail::minimal_conflict(ground_axioms)) msg += " {" + to_string(c) + "}";
        throw DescriptionError(msg);
    }

    // Rule schemas: strict rules from each axiom clause, then user rules.
    std::vector<Rule> schema_rules;
    for (std::size_t i = 0; i < schemas.size(); ++i)
        for (auto& r : clause_rules(schemas[i])) {
            r.name = "ax" + std::to_string(i + 1) + "_" + r.name;
            schema_rules.push_back(std::move(r));
        }
    for (const auto& r : spec.rules) {
        if (!free_vars(r).empty() && constants.empty())
            throw DescriptionError("rule " + r.name + " has variables but there are no constants");
        schema_rules.push_back(r);
    }

    auto instances = std::make_shared<std::vector<RuleInstance>>();
    auto by_name = std::make_shared<std::map<std::pair<std::string, Substitution>, InstanceId>>();
    auto base_vars = std::make_shared<std::map<std::string, std::set<std::string>>>();
    std::vector<std::pair<const Rule*, InstanceId>> structural;  // for duplicate detection
    std::map<std::string, std::vector<InstanceId>> of_base;
    {
        auto cmp = [](const Rule& a, const Rule& b) { return compare_rules(a, b) < 0; };
        std::map<Rule, InstanceId, decltype(cmp)> seen(cmp);
        for (const auto& r : schema_rules) {
            (*base_vars)[r.name] = free_vars(r);
            for_each_grounding(free_vars(r), constants, [&](const Substitution& s) {
                auto ri = apply_substitution(r, s);
                auto [it, inserted] = seen.emplace(ri.rule, static_cast<InstanceId>(instances->size()));
                if (inserted) instances->push_back(ri);
                (*by_name)[{r.name, s}] = it->second;
                of_base[r.name].push_back(it->second);
            });
        }
    }

    auto consequent_cnf = std::make_shared<std::vector<ClauseSet>>();
    auto consistent = std::make_shared<std::vector<bool>>();
    for (const auto& ri : *instances) {
        consequent_cnf->push_back(to_cnf(ri.rule.consequent));
        std::span<const Clause> ax(ground_axioms), head(consequent_cnf->back());
        consistent->push_back(classical::is_satisfiable({ax, head}));
    }

    // Priority relation.
    std::set<std::pair<InstanceId, InstanceId>> pairs;
    auto resolve = [&](const std::string& base, const Substitution& s) -> InstanceId {
        auto vars_it = base_vars->find(base);
        if (vars_it == base_vars->end()) throw DescriptionError("priority refers to unknown rule " + base);
        for (const auto& v : vars_it->second)
            if (!s.find(v)) throw DescriptionError("priority on " + base + " leaves variable " + v + " unbound");
        for (const auto& v : s.domain())
            if (!vars_it->second.count(v)) throw DescriptionError("priority on " + base + " binds " + v + ", which does not occur in the rule");
        auto it = by_name->find({base, s});
        if (it == by_name->end()) throw DescriptionError("priority refers to unknown instance " + base + to_string(s));
        return it->second;
    };
    for (const auto& p : spec.priorities) {
        if (!base_vars->count(p.superior)) throw DescriptionError("priority refers to unknown rule " + p.superior);
        if (!base_vars->count(p.inferior)) throw DescriptionError("priority refers to unknown rule " + p.inferior);
        if (p.superior_at || p.inferior_at) {
            if (!p.superior_at || !p.inferior_at)
                throw DescriptionError("priority " + p.superior + " > " + p.inferior + " pins only one side to an instance");
            pairs.emplace(resolve(p.superior, *p.superior_at), resolve(p.inferior, *p.inferior_at));
            continue;
        }
        // Every pair of instances agreeing on the variables the two rules share.
        const auto& sup_vars = (*base_vars)[p.superior];
        const auto& inf_vars = (*base_vars)[p.inferior];
        std::set<std::string> shared;
        std::set_intersection(sup_vars.begin(), sup_vars.end(), inf_vars.begin(), inf_vars.end(),
                              std::inserter(shared, shared.end()));
        for (const auto& [key_s, id_s] : *by_name) {
            if (key_s.first != p.superior) continue;
            for (const auto& [key_i, id_i] : *by_name) {
                if (key_i.first != p.inferior) continue;
                bool agree = std::all_of(shared.begin(), shared.end(), [&](const std::string& v) {
                    return *key_s.second.find(v) == *key_i.second.find(v);
                });
                if (agree) pairs.emplace(id_s, id_i);
            }
        }
    }
    auto above = std::make_shared<std::vector<std::set<InstanceId>>>(instances->size());
    for (auto [a, b] : pairs) (*above)[b].insert(a);

    d.spec_ = std::make_shared<const DescriptionSpec>(std::move(spec));
    d.axioms_ = std::make_shared<const ClauseSet>(std::move(ground_axioms));
    d.axiom_clauses_ = std::make_shared<const ClauseSet>(std::move(schemas));
    d.constants_ = std::make_shared<const std::vector<std::string>>(std::move(constants));
    d.instances_ = std::move(instances);
    d.consequent_cnf_ = std::move(consequent_cnf);
    d.consistent_ = std::move(consistent);
    d.by_name_ = std::move(by_name);
    d.base_vars_ = std::move(base_vars);
    d.pairs_ = std::make_shared<const std::vector<std::pair<InstanceId, InstanceId>>>(pairs.begin(), pairs.end());
    d.above_ = std::move(above);
    d.cache_ = std::make_shared<PlausibleDescription::Cache>();

    if (d.has_priorities()) {
        for (InstanceId id = 0; id < d.instance_count(); ++id) {
            const auto& c = d.instance(id).rule.consequent;
            for (const auto& f : {c, negate(c)}) {
                auto wf = d.check_well_founded(f);
                if (wf.ok) continue;
                std::string msg = "priority relation is not well-founded on " + to_string(f) + ": ";
                for (std::size_t i = 0; i < wf.witness.size(); ++i) msg += (i ? " , " : "") + d.label(wf.witness[i]);
                msg += " , ...";
                throw DescriptionError(msg);
            }
        }
    }
    return d;
}

}  // namespace plogic
