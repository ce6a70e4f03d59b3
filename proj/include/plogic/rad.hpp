#pragma once

// Evaluation rads: the part of the full evaluation digraph that an
// evaluation actually needs, used as proof and disproof certificates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plogic/engine.hpp"

namespace plogic {

/// (a,H,f), (a,H,F), (a,H,f,r) and (a,H,f,r,s) respectively.
enum class NodeShape : unsigned char { formula, set, support, defeat };

enum class ArcClass : unsigned char { necessary, optional, irrelevant };

inline const char* to_string(NodeShape s) {
    switch (s) {
    case NodeShape::formula: return "formula";
    case NodeShape::set: return "set";
    case NodeShape::support: return "support";
    case NodeShape::defeat: return "defeat";
    }
    return "?";
}

inline const char* to_string(ArcClass c) {
    switch (c) {
    case ArcClass::necessary: return "necessary";
    case ArcClass::optional: return "optional";
    case ArcClass::irrelevant: return "irrelevant";
    }
    return "?";
}

struct RadNode {
    NodeShape shape = NodeShape::formula;
    Algorithm alg = Algorithm::phi;
    History history;
    Formula formula;                  // formula, support and defeat nodes
    FormulaSet formulas;              // set nodes
    std::optional<InstanceId> rule;   // support and defeat nodes
    std::optional<InstanceId> foe;    // defeat nodes
    ProofValue value = ProofValue::minus;

    bool operator==(const RadNode&) const = default;

    /// Identity of the evaluation the node stands for; the value is not part
    /// of it.
    std::string key() const {
        std::string k = std::string(to_string(shape)) + '|' + std::string(name(alg)) + '|';
        for (const auto& e : history.entries()) k += std::string(name(e.tag)) + ':' + std::to_string(e.instance) + ',';
        k += '|';
        if (shape == NodeShape::set) {
            for (const auto& f : formulas) k += to_string(f) + ';';
        } else {
            k += to_string(formula);
        }
        if (rule) k += '|' + std::to_string(*rule);
        if (foe) k += '|' + std::to_string(*foe);
        return k;
    }
};

struct RadArc {
    std::size_t parent;
    std::size_t child;
    ArcClass cls;

    bool operator==(const RadArc&) const = default;
};

struct EvaluationRad {
    std::vector<RadNode> nodes;
    std::vector<RadArc> arcs;
    std::size_t root = 0;

    bool operator==(const EvaluationRad&) const = default;

    std::vector<std::size_t> children(std::size_t n) const {
        std::vector<std::size_t> out;
        for (const auto& a : arcs)
            if (a.parent == n) out.push_back(a.child);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Children and classification
// ---------------------------------------------------------------------------

/// Children of a node in the full evaluation rad, in canonical order and
/// without values.  Formula lookups go through the description only.
inline std::vector<RadNode> full_children(const PlausibleDescription& d, const RadNode& p) {
    std::vector<RadNode> out;
    auto set_node = [&](Algorithm a, HistoryEntry e, InstanceId r) {
        RadNode c;
        c.shape = NodeShape::set;
        c.alg = a;
        c.history = p.history.extended(e);
        c.formulas = d.instance(r).rule.antecedents;
        return c;
    };
    switch (p.shape) {
    case NodeShape::set:
        for (const auto& f : p.formulas) {
            RadNode c;
            c.shape = NodeShape::formula;
            c.alg = p.alg;
            c.history = p.history;
            c.formula = f;
            out.push_back(std::move(c));
        }
        break;
    case NodeShape::formula:
        if (p.alg == Algorithm::phi || d.is_fact(p.formula)) break;
        for (auto r : d.supporters(p.formula, Evidence::strict_and_defeasible)) {
            RadNode c = p;
            c.shape = NodeShape::support;
            c.rule = r;
            out.push_back(std::move(c));
        }
        break;
    case NodeShape::support: {
        const HistoryEntry e{p.alg, *p.rule};
        if (!p.history.contains(e)) out.push_back(set_node(p.alg, e, *p.rule));
        for (auto s : plogic::foe(d, p.alg, p.formula, *p.rule)) {
            RadNode c = p;
            c.shape = NodeShape::defeat;
            c.foe = s;
            out.push_back(std::move(c));
        }
        break;
    }
    case NodeShape::defeat: {
        for (auto t : d.superior_supporters(p.formula, *p.foe)) {
            const HistoryEntry e{p.alg, t};
            if (!p.history.contains(e)) out.push_back(set_node(p.alg, e, t));
        }
        const auto co = co_algorithm(p.alg);
        const HistoryEntry e{co, *p.foe};
        if (!p.history.contains(e)) out.push_back(set_node(co, e, *p.foe));
        break;
    }
    }
    for (auto& c : out) c.value = ProofValue::minus;
    return out;
}

/// A child of a defeat node either defeats the foe through a superior team
/// member or disables it; the disabling child is the one whose newest
/// history entry names the foe itself.
inline bool is_disabling_child(const RadNode& p, const RadNode& c) {
    return p.shape == NodeShape::defeat && !c.history.empty() && c.history.back().instance == *p.foe &&
           c.history.back().tag == co_algorithm(p.alg);
}

/// Classification of the arc p -> c from the values of p and c.
inline ArcClass classify(const RadNode& p, const RadNode& c) {
    using enum ProofValue;
    auto pick = [&](ProofValue all_necessary_when, ProofValue optional_child_value) {
        if (p.value == all_necessary_when) return ArcClass::necessary;
        return c.value == optional_child_value ? ArcClass::optional : ArcClass::irrelevant;
    };
    switch (p.shape) {
    case NodeShape::set: return pick(plus, minus);
    case NodeShape::formula: return pick(minus, plus);
    case NodeShape::support: return pick(plus, minus);
    case NodeShape::defeat: return pick(minus, is_disabling_child(p, c) ? minus : plus);
    }
    return ArcClass::irrelevant;
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

struct RadOptions {
    std::size_t node_limit = 1'000'000;
};

namespace detail {

inline ProofValue node_value(Evaluator& ev, const RadNode& n) {
    switch (n.shape) {
    case NodeShape::formula: return ev.evaluate(n.alg, n.history, n.formula);
    case NodeShape::set: return ev.evaluate(n.alg, n.history, std::span<const Formula>(n.formulas));
    case NodeShape::support: return ev.evaluate_support(n.alg, n.history, n.formula, *n.rule);
    case NodeShape::defeat: return ev.evaluate_defeat(n.alg, n.history, n.formula, *n.rule, *n.foe);
    }
    return ProofValue::minus;
}

inline EvaluationRad build_rad(Evaluator& ev, RadNode root, const RadOptions& opt) {
    const auto& d = ev.description();
    EvaluationRad rad;
    std::map<std::string, std::size_t> index;
    root.value = node_value(ev, root);
    index.emplace(root.key(), 0);
    rad.nodes.push_back(std::move(root));
    // Nodes are expanded in creation order; a node reached again through
    // another parent is shared.
    for (std::size_t next = 0; next < rad.nodes.size(); ++next) {
        const RadNode p = rad.nodes[next];
        bool optional_taken = false;
        for (auto& c : full_children(d, p)) {
            c.value = node_value(ev, c);
            const auto cls = classify(p, c);
            if (cls == ArcClass::irrelevant) continue;
            if (cls == ArcClass::optional) {
                if (optional_taken) continue;
                optional_taken = true;
            }
            auto [it, inserted] = index.emplace(c.key(), rad.nodes.size());
            if (inserted) {
                if (rad.nodes.size() >= opt.node_limit)
                    throw Error("evaluation rad exceeds " + std::to_string(opt.node_limit) + " nodes");
                rad.nodes.push_back(std::move(c));
            }
            rad.arcs.push_back({next, it->second, cls});
        }
    }
    return rad;
}

}  // namespace detail

/// The evaluation rad rooted at (a, (), f).
inline EvaluationRad build_evaluation_rad(Evaluator& ev, Algorithm a, const Formula& f, const RadOptions& opt = {}) {
    RadNode root;
    root.shape = NodeShape::formula;
    root.alg = a;
    root.formula = f;
    return detail::build_rad(ev, std::move(root), opt);
}

/// The evaluation rad rooted at (a, (), F).
inline EvaluationRad build_evaluation_rad(Evaluator& ev, Algorithm a, FormulaSet fs, const RadOptions& opt = {}) {
    RadNode root;
    root.shape = NodeShape::set;
    root.alg = a;
    root.formulas = make_formula_set(std::move(fs));
    return detail::build_rad(ev, std::move(root), opt);
}

inline EvaluationRad build_evaluation_rad(const PlausibleDescription& d, Algorithm a, const Formula& f,
                                          const RadOptions& opt = {}) {
    Evaluator ev(d);
    return build_evaluation_rad(ev, a, f, opt);
}

enum class CertificateKind : unsigned char { proof, disproof };

inline const char* to_string(CertificateKind k) { return k == CertificateKind::proof ? "proof" : "disproof"; }

struct Certificate {
    CertificateKind kind;
    Algorithm alg;
    EvaluationRad rad;

    bool operator==(const Certificate&) const = default;
};

/// An a-proof when the root evaluates to +1, an a-disproof otherwise.
inline Certificate extract_certificate(EvaluationRad rad) {
    const auto& root = rad.nodes.at(rad.root);
    return Certificate{root.value == ProofValue::plus ? CertificateKind::proof : CertificateKind::disproof, root.alg,
                       std::move(rad)};
}

}  // namespace plogic
