#pragma once

// Ground classical satisfiability, entailment and validity.
//
// Satisfiability is decided by backtracking search with unit propagation.
// Atoms are numbered in lexicographic order and branched on in that order,
// so every answer is reproducible run to run.

#include <cstdlib>
#include <map>
#include <span>
#include <vector>

#include "plogic/syntax.hpp"

namespace plogic::classical {

namespace detail {

class Solver {
public:
    // Literals are encoded as +(v+1) / -(v+1).
    Solver(std::vector<std::vector<int>> clauses, std::size_t atoms)
        : clauses_(std::move(clauses)), value_(atoms, 0) {}

    bool solve() {
        for (const auto& c : clauses_)
            if (c.empty()) return false;
        return search();
    }

private:
    int value_of(int lit) const {
        int v = value_[static_cast<std::size_t>(std::abs(lit) - 1)];
        return lit > 0 ? v : -v;
    }

    void assign(int lit, std::vector<int>& trail) {
        value_[static_cast<std::size_t>(std::abs(lit) - 1)] = lit > 0 ? 1 : -1;
        trail.push_back(std::abs(lit) - 1);
    }

    // Returns false on conflict.
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                int unassigned = 0, last = 0;
                bool satisfied = false;
                for (int lit : c) {
                    int v = value_of(lit);
                    if (v > 0) {
                        satisfied = true;
                        break;
                    }
                    if (v == 0) {
                        ++unassigned;
                        last = lit;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign(last, trail);
                    changed = true;
                }
            }
        }
        return true;
    }

    void undo(const std::vector<int>& trail) {
        for (int v : trail) value_[static_cast<std::size_t>(v)] = 0;
    }

    bool search() {
        std::vector<int> trail;
        if (!propagate(trail)) {
            undo(trail);
            return false;
        }
        std::size_t next = 0;
        while (next < value_.size() && value_[next] != 0) ++next;
        if (next == value_.size()) {
            undo(trail);
            return true;
        }
        int var = static_cast<int>(next) + 1;
        for (int lit : {var, -var}) {
            std::vector<int> decision;
            assign(lit, decision);
            bool ok = search();
            undo(decision);
            if (ok) {
                undo(trail);
                return true;
            }
        }
        undo(trail);
        return false;
    }

    std::vector<std::vector<int>> clauses_;
    std::vector<int> value_;
};

inline bool satisfiable(const std::vector<const Clause*>& clauses) {
    std::map<Atom, int> index;
    for (const auto* c : clauses)
        for (const auto& l : c->literals()) index.emplace(l.atom, 0);
    int next = 0;
    for (auto& [atom, id] : index) id = next++;
    std::vector<std::vector<int>> encoded;
    encoded.reserve(clauses.size());
    for (const auto* c : clauses) {
        if (c->is_tautologous()) continue;
        std::vector<int> row;
        for (const auto& l : c->literals()) {
            int v = index.at(l.atom) + 1;
            row.push_back(l.positive ? v : -v);
        }
        encoded.push_back(std::move(row));
    }
    return Solver(std::move(encoded), index.size()).solve();
}

}  // namespace detail

/// True iff some assignment to the mentioned atoms satisfies every clause.
inline bool is_satisfiable(std::span<const Clause> cs) {
    std::vector<const Clause*> ptrs;
    ptrs.reserve(cs.size());
    for (const auto& c : cs) ptrs.push_back(&c);
    return detail::satisfiable(ptrs);
}

/// Satisfiability of the union of several clause sets without copying them.
inline bool is_satisfiable(std::initializer_list<std::span<const Clause>> parts) {
    std::vector<const Clause*> ptrs;
    for (auto part : parts)
        for (const auto& c : part) ptrs.push_back(&c);
    return detail::satisfiable(ptrs);
}

/// Ax |= f, decided as unsatisfiability of Ax together with the clauses of ~f.
inline bool entails(std::span<const Clause> axioms, const Formula& f) {
    auto refutation = to_cnf(negate(f));
    return !is_satisfiable({axioms, std::span<const Clause>(refutation)});
}

/// Ax together with every formula in `extra` entails f.
inline bool entails(std::span<const Clause> axioms, std::span<const Formula> extra, const Formula& f) {
    ClauseSet more;
    for (const auto& g : extra) {
        auto cs = to_cnf(g);
        more.insert(more.end(), cs.begin(), cs.end());
    }
    auto refutation = to_cnf(negate(f));
    return !is_satisfiable({axioms, std::span<const Clause>(more), std::span<const Clause>(refutation)});
}

inline bool is_satisfiable(std::span<const Clause> axioms, std::span<const Formula> extra) {
    ClauseSet more;
    for (const auto& g : extra) {
        auto cs = to_cnf(g);
        more.insert(more.end(), cs.begin(), cs.end());
    }
    return is_satisfiable({axioms, std::span<const Clause>(more)});
}

inline bool is_tautology(const Formula& f) { return entails(std::span<const Clause>{}, f); }

}  // namespace plogic::classical
