#pragma once

// Function-free first-order vocabulary: terms, atoms, literals, formulas,
// clauses, substitutions and rules.  Every value is immutable once built.

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plogic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Terms, atoms, literals
// ---------------------------------------------------------------------------

struct Term {
    enum class Kind : unsigned char { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string n) { return {Kind::constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::variable, std::move(n)}; }

    bool is_variable() const { return kind == Kind::variable; }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const {
        return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
    }

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

/// A signed atom.  Negating twice gives back the same value, so double
/// negation never appears at literal level.
struct Literal {
    bool positive = true;
    Atom atom;

    Literal negated() const { return {!positive, atom}; }

    // Atom first so that p and ~p sort next to each other.
    std::strong_ordering operator<=>(const Literal& o) const {
        if (auto c = atom <=> o.atom; c != 0) return c;
        return positive <=> o.positive;
    }
    bool operator==(const Literal&) const = default;
};

inline Literal positive(Atom a) { return {true, std::move(a)}; }
inline Literal negative(Atom a) { return {false, std::move(a)}; }

/// Shorthand for a propositional (0-ary) atom.
inline Atom prop(std::string name) { return Atom{std::move(name), {}}; }

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula {
public:
    enum class Kind : unsigned char { literal, negation, conjunction, disjunction };

    Formula() : Formula(make_literal(positive(prop("true")))) {}
    Formula(Literal l) : Formula(make_literal(std::move(l))) {}  // NOLINT: implicit on purpose

    static Formula negation(Formula f) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::negation;
        n->operands.push_back(std::move(f));
        return Formula(std::move(n));
    }

    /// Conjunction of a non-empty finite set; duplicates are dropped and the
    /// operands kept in canonical order.
    static Formula conjunction(std::vector<Formula> ops) { return junction(Kind::conjunction, std::move(ops)); }
    static Formula disjunction(std::vector<Formula> ops) { return junction(Kind::disjunction, std::move(ops)); }

    Kind kind() const { return node_->kind; }
    bool is_literal() const { return kind() == Kind::literal; }
    const Literal& literal() const { return node_->literal; }
    const std::vector<Formula>& operands() const { return node_->operands; }
    /// Body of a negation.
    const Formula& body() const { return node_->operands.front(); }

    std::strong_ordering operator<=>(const Formula& o) const {
        if (node_ == o.node_) return std::strong_ordering::equal;
        if (auto c = kind() <=> o.kind(); c != 0) return c;
        if (is_literal()) return literal() <=> o.literal();
        return std::lexicographical_compare_three_way(operands().begin(), operands().end(),
                                                      o.operands().begin(), o.operands().end());
    }
    bool operator==(const Formula& o) const { return (*this <=> o) == 0; }

private:
    struct Node {
        Kind kind = Kind::literal;
        Literal literal;
        std::vector<Formula> operands;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> make_literal(Literal l) {
        auto n = std::make_shared<Node>();
        n->literal = std::move(l);
        return n;
    }

    static Formula junction(Kind k, std::vector<Formula> ops) {
        if (ops.empty())
            throw Error(k == Kind::conjunction ? "empty conjunction" : "empty disjunction");
        std::sort(ops.begin(), ops.end());
        ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->operands = std::move(ops);
        return Formula(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

using FormulaSet = std::vector<Formula>;

/// Sorts and deduplicates, giving the canonical representation of a finite
/// set of formulas.
inline FormulaSet make_formula_set(FormulaSet fs) {
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    return fs;
}

/// ~f: flips the sign of a literal, wraps anything else.
inline Formula negate(const Formula& f) {
    if (f.is_literal()) return Formula(f.literal().negated());
    return Formula::negation(f);
}

inline bool is_ground(const Formula& f) {
    if (f.is_literal()) return f.literal().atom.is_ground();
    return std::all_of(f.operands().begin(), f.operands().end(), [](const Formula& g) { return is_ground(g); });
}

inline void collect_atoms(const Formula& f, std::set<Atom>& out) {
    if (f.is_literal()) {
        out.insert(f.literal().atom);
        return;
    }
    for (const auto& g : f.operands()) collect_atoms(g, out);
}

/// Truth value of a ground formula under an assignment of its atoms.
template <class Valuation>
bool evaluate(const Formula& f, const Valuation& value_of) {
    switch (f.kind()) {
    case Formula::Kind::literal: return value_of(f.literal().atom) == f.literal().positive;
    case Formula::Kind::negation: return !evaluate(f.body(), value_of);
    case Formula::Kind::conjunction:
        return std::all_of(f.operands().begin(), f.operands().end(),
                           [&](const Formula& g) { return evaluate(g, value_of); });
    case Formula::Kind::disjunction:
        return std::any_of(f.operands().begin(), f.operands().end(),
                           [&](const Formula& g) { return evaluate(g, value_of); });
    }
    return false;
}

// ---------------------------------------------------------------------------
// Clauses and CNF
// ---------------------------------------------------------------------------

/// Finite non-empty set of literals.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
        std::sort(lits_.begin(), lits_.end());
        lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    }

    const std::vector<Literal>& literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }

    /// True when some atom occurs with both signs.
    bool is_tautologous() const {
        for (std::size_t i = 0; i + 1 < lits_.size(); ++i)
            if (lits_[i].atom == lits_[i + 1].atom) return true;
        return false;
    }

    bool is_ground() const {
        return std::all_of(lits_.begin(), lits_.end(), [](const Literal& l) { return l.atom.is_ground(); });
    }

    Formula as_formula() const {
        if (lits_.size() == 1) return Formula(lits_.front());
        std::vector<Formula> ops(lits_.begin(), lits_.end());
        return Formula::disjunction(std::move(ops));
    }

    auto operator<=>(const Clause&) const = default;
    bool operator==(const Clause&) const = default;

private:
    std::vector<Literal> lits_;
};

using ClauseSet = std::vector<Clause>;

inline ClauseSet make_clause_set(ClauseSet cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

namespace detail {

// Clauses as plain literal vectors during distribution.
using RawCnf = std::vector<std::vector<Literal>>;

inline RawCnf cnf_of(const Formula& f, bool negated);

inline RawCnf cnf_product(const std::vector<RawCnf>& parts) {
    RawCnf acc{{}};
    for (const auto& part : parts) {
        RawCnf next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc)
            for (const auto& b : part) {
                auto merged = a;
                merged.insert(merged.end(), b.begin(), b.end());
                next.push_back(std::move(merged));
            }
        acc = std::move(next);
    }
    return acc;
}

inline RawCnf cnf_of(const Formula& f, bool negated) {
    switch (f.kind()) {
    case Formula::Kind::literal:
        return {{negated ? f.literal().negated() : f.literal()}};
    case Formula::Kind::negation:
        return cnf_of(f.body(), !negated);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        // Under an odd number of negations a conjunction behaves as a
        // disjunction of the negated operands, and vice versa.
        bool is_and = (f.kind() == Formula::Kind::conjunction) != negated;
        std::vector<RawCnf> parts;
        parts.reserve(f.operands().size());
        for (const auto& g : f.operands()) parts.push_back(cnf_of(g, negated));
        if (is_and) {
            RawCnf out;
            for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
            return out;
        }
        return cnf_product(parts);
    }
    }
    return {};
}

}  // namespace detail

/// Clausal form by negation pushing and plain distribution.  No fresh atoms
/// are introduced, so the result is logically equivalent to f.
inline ClauseSet to_cnf(const Formula& f) {
    ClauseSet out;
    for (auto& raw : detail::cnf_of(f, false)) out.emplace_back(std::move(raw));
    return make_clause_set(std::move(out));
}

// ---------------------------------------------------------------------------
// Substitutions and rules
// ---------------------------------------------------------------------------

/// Finite map from variable names to constant names.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const std::string, std::string>> init) : map_(init) {}
    explicit Substitution(std::map<std::string, std::string> m) : map_(std::move(m)) {}

    void bind(const std::string& var, const std::string& constant) { map_[var] = constant; }
    const std::string* find(const std::string& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? nullptr : &it->second;
    }
    /// Domain of change.
    std::set<std::string> domain() const {
        std::set<std::string> d;
        for (const auto& [k, v] : map_) d.insert(k);
        return d;
    }
    bool empty() const { return map_.empty(); }
    const std::map<std::string, std::string>& bindings() const { return map_; }

    auto operator<=>(const Substitution&) const = default;
    bool operator==(const Substitution&) const = default;

private:
    std::map<std::string, std::string> map_;
};

enum class RuleKind : unsigned char { strict, defeasible, warning };

struct Rule {
    std::string name;
    RuleKind kind = RuleKind::defeasible;
    FormulaSet antecedents;  // canonical: sorted, no duplicates
    Formula consequent;

    Rule() = default;
    Rule(std::string n, RuleKind k, FormulaSet ants, Formula c)
        : name(std::move(n)), kind(k), antecedents(make_formula_set(std::move(ants))), consequent(std::move(c)) {}

    bool is_ground() const {
        return plogic::is_ground(consequent) &&
               std::all_of(antecedents.begin(), antecedents.end(), [](const Formula& f) { return plogic::is_ground(f); });
    }
};

/// Structural identity of a rule: name is not part of it.
inline bool same_rule(const Rule& a, const Rule& b) {
    return a.kind == b.kind && a.consequent == b.consequent && a.antecedents == b.antecedents;
}

inline std::strong_ordering compare_rules(const Rule& a, const Rule& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.consequent <=> b.consequent; c != 0) return c;
    return std::lexicographical_compare_three_way(a.antecedents.begin(), a.antecedents.end(),
                                                  b.antecedents.begin(), b.antecedents.end());
}

namespace detail {

inline void vars_of(const Formula& f, std::set<std::string>& out) {
    if (f.is_literal()) {
        for (const auto& t : f.literal().atom.args)
            if (t.is_variable()) out.insert(t.name);
        return;
    }
    for (const auto& g : f.operands()) vars_of(g, out);
}

inline Term substitute(const Term& t, const Substitution& s, const std::string& rule_name, bool require_total) {
    if (!t.is_variable()) return t;
    if (const auto* c = s.find(t.name)) return Term::constant(*c);
    if (require_total)
        throw Error("substitution leaves variable " + t.name + " of rule " + rule_name + " unbound");
    return t;
}

inline Formula substitute(const Formula& f, const Substitution& s, const std::string& rule_name, bool require_total) {
    switch (f.kind()) {
    case Formula::Kind::literal: {
        Literal l = f.literal();
        for (auto& t : l.atom.args) t = substitute(t, s, rule_name, require_total);
        return Formula(std::move(l));
    }
    case Formula::Kind::negation:
        return Formula::negation(substitute(f.body(), s, rule_name, require_total));
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        std::vector<Formula> ops;
        for (const auto& g : f.operands()) ops.push_back(substitute(g, s, rule_name, require_total));
        return f.kind() == Formula::Kind::conjunction ? Formula::conjunction(std::move(ops))
                                                      : Formula::disjunction(std::move(ops));
    }
    }
    return f;
}

}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    detail::vars_of(f, out);
    return out;
}

/// Var(r): every variable occurring in an antecedent or the consequent.
inline std::set<std::string> free_vars(const Rule& r) {
    std::set<std::string> out;
    for (const auto& a : r.antecedents) detail::vars_of(a, out);
    detail::vars_of(r.consequent, out);
    return out;
}

inline Formula substitute(const Formula& f, const Substitution& s) { return detail::substitute(f, s, "", false); }

inline Literal substitute(const Literal& l, const Substitution& s) {
    return substitute(Formula(l), s).literal();
}

inline Clause substitute(const Clause& c, const Substitution& s) {
    std::vector<Literal> lits;
    for (const auto& l : c.literals()) lits.push_back(substitute(l, s));
    return Clause(std::move(lits));
}

/// A ground rule together with the rule and substitution it came from.
struct RuleInstance {
    std::string base;
    Substitution substitution;
    Rule rule;
};

/// r sigma.  sigma must bind every variable of r and nothing else.
inline RuleInstance apply_substitution(const Rule& r, const Substitution& sigma) {
    auto vars = free_vars(r);
    for (const auto& v : sigma.domain())
        if (!vars.count(v)) throw Error("substitution binds " + v + ", which does not occur in rule " + r.name);
    FormulaSet ants;
    for (const auto& a : r.antecedents) ants.push_back(detail::substitute(a, sigma, r.name, true));
    Formula c = detail::substitute(r.consequent, sigma, r.name, true);
    return RuleInstance{r.name, sigma, Rule(r.name, r.kind, std::move(ants), std::move(c))};
}

// ---------------------------------------------------------------------------
// Canonical text
// ---------------------------------------------------------------------------

inline std::string to_string(const Term& t) { return t.name; }

inline std::string to_string(const Atom& a) {
    std::string s = a.predicate;
    if (a.args.empty()) return s;
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) s += ',';
        s += a.args[i].name;
    }
    return s + ')';
}

inline std::string to_string(const Literal& l) { return (l.positive ? "" : "~") + to_string(l.atom); }

namespace detail {

inline std::string print(const Formula& f, bool nested) {
    switch (f.kind()) {
    case Formula::Kind::literal: return to_string(f.literal());
    case Formula::Kind::negation: return "~" + print(f.body(), true);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        std::vector<std::string> parts;
        for (const auto& g : f.operands()) parts.push_back(print(g, true));
        std::sort(parts.begin(), parts.end());
        // One-element junctions need the keyword form to survive re-parsing.
        if (parts.size() == 1)
            return (f.kind() == Formula::Kind::conjunction ? "and(" : "or(") + parts.front() + ")";
        const char* sep = f.kind() == Formula::Kind::conjunction ? " & " : " | ";
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += sep;
            s += parts[i];
        }
        return nested ? "(" + s + ")" : s;
    }
    }
    return {};
}

}  // namespace detail

/// Canonical text: `~` for negation, `&` and `|` with operands sorted
/// lexicographically, parentheses around nested junctions.
inline std::string to_string(const Formula& f) { return detail::print(f, false); }

inline std::string to_string(const Clause& c) { return to_string(c.as_formula()); }

inline std::string to_string(const Substitution& s) {
    if (s.empty()) return {};
    std::string out = "[";
    bool first = true;
    for (const auto& [k, v] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += k + "=" + v;
    }
    return out + "]";
}

inline const char* arrow(RuleKind k) {
    switch (k) {
    case RuleKind::strict: return "->";
    case RuleKind::defeasible: return "=>";
    case RuleKind::warning: return "~>";
    }
    return "?";
}

inline std::string to_string(const Rule& r) {
    std::string s = "{";
    std::vector<std::string> parts;
    for (const auto& a : r.antecedents) parts.push_back(to_string(a));
    std::sort(parts.begin(), parts.end());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ", ";
        s += parts[i];
    }
    return s + "} " + arrow(r.kind) + " " + to_string(r.consequent);
}

inline std::string to_string(const RuleInstance& ri) {
    return ri.base + to_string(ri.substitution) + ": " + to_string(ri.rule);
}

}  // namespace plogic
