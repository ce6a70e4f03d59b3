#pragma once

// Whole-description checks over a finite query universe: the algorithm
// hierarchy, coherence, strong 2-consistency and the depth bound.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "plogic/classical.hpp"
#include "plogic/engine.hpp"

namespace plogic {

struct AuditRow {
    std::string check;
    bool pass = true;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditRow> rows;

    bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const AuditRow& r) { return r.pass; });
    }
};

struct AuditOptions {
    /// Re-evaluate every query under history-keyed memoisation as part of
    /// the coherence check.
    bool recheck_memo_modes = true;
};

/// Every instance consequent and its negation, without repeats.
inline std::vector<Formula> default_query_universe(const PlausibleDescription& d) {
    std::set<Formula> qs;
    for (const auto& ri : d.instances()) {
        qs.insert(ri.rule.consequent);
        qs.insert(negate(ri.rule.consequent));
    }
    return {qs.begin(), qs.end()};
}

/// P(a, (), q) for every algorithm and query: table[index_of(a)][k].
using ValueTable = std::array<std::vector<ProofValue>, algorithm_count>;

inline ValueTable evaluate_all(const PlausibleDescription& d, std::span<const Formula> queries,
                               EvaluationOptions options = {}, std::size_t* max_depth = nullptr) {
    ValueTable table;
    for (auto a : all_algorithms) {
        Evaluator ev(d, options);
        for (const auto& q : queries) table[index_of(a)].push_back(ev.prove(a, q));
        if (max_depth) *max_depth = std::max(*max_depth, ev.stats().max_depth);
    }
    return table;
}

namespace detail {

// Reports the first query where `lhs` proves and `rhs` does not.
inline std::string subset_violation(const ValueTable& t, std::span<const Formula> qs, Algorithm lhs, Algorithm rhs,
                                    ProofValue v) {
    for (std::size_t k = 0; k < qs.size(); ++k)
        if (t[index_of(lhs)][k] == v && t[index_of(rhs)][k] != v)
            return std::string(name(lhs)) + " but not " + std::string(name(rhs)) + " on " + to_string(qs[k]);
    return {};
}

}  // namespace detail

inline AuditReport audit(const PlausibleDescription& d, std::span<const Formula> queries, AuditOptions options = {}) {
    AuditReport rep;
    std::size_t max_depth = 0;
    const auto table = evaluate_all(d, queries, {}, &max_depth);

    using A = Algorithm;
    const std::array chain{A::phi, A::pi, A::psi, A::theta, A::theta_prime, A::beta, A::psi_prime, A::pi_prime};

    auto chain_row = [&](const std::string& label, ProofValue v, bool reversed) {
        AuditRow row{label, true, {}};
        auto check = [&](A lo, A hi) {
            if (!row.pass) return;
            auto s = reversed ? detail::subset_violation(table, queries, hi, lo, v)
                              : detail::subset_violation(table, queries, lo, hi, v);
            if (!s.empty()) row = {label, false, s};
        };
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) check(chain[i], chain[i + 1]);
        check(A::theta_prime, A::theta);
        rep.rows.push_back(std::move(row));
    };
    chain_row("hierarchy of proved sets", ProofValue::plus, false);
    chain_row("hierarchy of disproved sets", ProofValue::minus, true);

    {
        AuditRow row{"equalities without priorities", true, {}};
        if (d.has_priorities()) {
            row.detail = "not applicable: priorities present";
        } else {
            for (auto [x, y] : {std::pair{A::pi, A::psi}, std::pair{A::psi_prime, A::pi_prime}}) {
                for (auto [lo, hi] : {std::pair{x, y}, std::pair{y, x}}) {
                    auto s = detail::subset_violation(table, queries, lo, hi, ProofValue::plus);
                    if (!s.empty() && row.pass) row = {row.check, false, s};
                }
            }
        }
        rep.rows.push_back(std::move(row));
    }

    {
        AuditRow row{"coherence", true, {}};
        auto again = evaluate_all(d, queries);
        if (again != table) row = {row.check, false, "repeated evaluation changed a value"};
        if (row.pass && options.recheck_memo_modes) {
            auto plain = evaluate_all(d, queries, EvaluationOptions{.memo = MemoMode::full_history}, &max_depth);
            if (plain != table) row = {row.check, false, "history-keyed memoisation changed a value"};
        }
        rep.rows.push_back(std::move(row));
    }

    {
        AuditRow row{"strong 2-consistency", true, {}};
        for (auto a : {A::phi, A::pi, A::psi, A::theta, A::beta}) {
            std::vector<const Formula*> proved;
            for (std::size_t k = 0; k < queries.size(); ++k)
                if (table[index_of(a)][k] == ProofValue::plus) proved.push_back(&queries[k]);
            for (std::size_t i = 0; i < proved.size() && row.pass; ++i)
                for (std::size_t j = i; j < proved.size() && row.pass; ++j) {
                    const std::array pair{*proved[i], *proved[j]};
                    if (!classical::is_satisfiable(d.axioms(), pair))
                        row = {row.check, false,
                               std::string(name(a)) + " proves " + to_string(pair[0]) + " and " + to_string(pair[1])};
                }
        }
        rep.rows.push_back(std::move(row));
    }

    {
        const auto bound = 2 * d.instance_count() + 4;
        AuditRow row{"depth bound", max_depth <= bound,
                     "max depth " + std::to_string(max_depth) + ", bound " + std::to_string(bound)};
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace plogic
