#pragma once

// Certificate documents (JSON), graph export (DOT), and a validator that
// rechecks a certificate against the description without the evaluator.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plogic/classical.hpp"
#include "plogic/parser.hpp"
#include "plogic/rad.hpp"

namespace plogic {

using json = nlohmann::json;

inline constexpr int certificate_format_version = 1;

namespace detail {

inline json substitution_json(const Substitution& s) {
    json j = json::object();
    for (const auto& [k, v] : s.bindings()) j[k] = v;
    return j;
}

inline json instance_ref(const PlausibleDescription& d, InstanceId id) {
    const auto& ri = d.instance(id);
    return json{{"name", ri.base}, {"subst", substitution_json(ri.substitution)}};
}

inline InstanceId resolve_instance(const PlausibleDescription& d, const json& ref) {
    Substitution s;
    for (const auto& [k, v] : ref.at("subst").items()) s.bind(k, v.get<std::string>());
    const auto name = ref.at("name").get<std::string>();
    auto id = d.find(name, s);
    if (!id) throw Error("certificate names unknown instance " + name + to_string(s));
    return *id;
}

inline Algorithm algorithm_from(const json& j) {
    auto a = parse_algorithm(j.get<std::string>());
    if (!a) throw Error("certificate names unknown algorithm " + j.get<std::string>());
    return *a;
}

}  // namespace detail

inline json to_json(const PlausibleDescription& d, const Certificate& cert) {
    json nodes = json::array();
    for (std::size_t i = 0; i < cert.rad.nodes.size(); ++i) {
        const auto& n = cert.rad.nodes[i];
        json h = json::array();
        for (const auto& e : n.history.entries()) {
            auto ref = detail::instance_ref(d, e.instance);
            ref["alg"] = std::string(name(e.tag));
            h.push_back(std::move(ref));
        }
        json node{{"id", i},
                  {"shape", to_string(n.shape)},
                  {"algorithm", std::string(name(n.alg))},
                  {"history", std::move(h)},
                  {"value", to_int(n.value)}};
        if (n.shape == NodeShape::set) {
            json fs = json::array();
            for (const auto& f : n.formulas) fs.push_back(to_string(f));
            node["formulas"] = std::move(fs);
        } else {
            node["formula"] = to_string(n.formula);
        }
        if (n.rule) node["rule"] = detail::instance_ref(d, *n.rule);
        if (n.foe) node["foe"] = detail::instance_ref(d, *n.foe);
        nodes.push_back(std::move(node));
    }
    json arcs = json::array();
    for (const auto& a : cert.rad.arcs) arcs.push_back(json{{"from", a.parent}, {"to", a.child}, {"class", to_string(a.cls)}});
    return json{{"format_version", certificate_format_version},
                {"kind", to_string(cert.kind)},
                {"algorithm", std::string(name(cert.alg))},
                {"description_hash", description_hash(d.spec())},
                {"root", cert.rad.root},
                {"nodes", std::move(nodes)},
                {"arcs", std::move(arcs)}};
}

/// Reads a certificate back.  Refuses documents made from a different
/// description or in an unknown format version.
inline Certificate certificate_from_json(const PlausibleDescription& d, const json& j) {
    try {
        if (j.at("format_version").get<int>() != certificate_format_version)
            throw Error("unsupported certificate format_version " + j.at("format_version").dump());
        if (j.at("description_hash").get<std::string>() != description_hash(d.spec()))
            throw Error("certificate was produced from a different description");
        Certificate cert;
        const auto kind = j.at("kind").get<std::string>();
        if (kind != "proof" && kind != "disproof") throw Error("unknown certificate kind " + kind);
        cert.kind = kind == "proof" ? CertificateKind::proof : CertificateKind::disproof;
        cert.alg = detail::algorithm_from(j.at("algorithm"));
        cert.rad.root = j.at("root").get<std::size_t>();
        const auto& nodes = j.at("nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& jn = nodes[i];
            if (jn.at("id").get<std::size_t>() != i) throw Error("certificate node ids must be 0, 1, 2, ... in order");
            RadNode n;
            const auto shape = jn.at("shape").get<std::string>();
            if (shape == "formula") n.shape = NodeShape::formula;
            else if (shape == "set") n.shape = NodeShape::set;
            else if (shape == "support") n.shape = NodeShape::support;
            else if (shape == "defeat") n.shape = NodeShape::defeat;
            else throw Error("unknown node shape " + shape);
            n.alg = detail::algorithm_from(jn.at("algorithm"));
            for (const auto& e : jn.at("history"))
                n.history = n.history.extended({detail::algorithm_from(e.at("alg")), detail::resolve_instance(d, e)});
            const int v = jn.at("value").get<int>();
            if (v != 1 && v != -1) throw Error("node value must be +1 or -1");
            n.value = v == 1 ? ProofValue::plus : ProofValue::minus;
            if (n.shape == NodeShape::set) {
                FormulaSet fs;
                for (const auto& f : jn.at("formulas")) fs.push_back(parse_formula(f.get<std::string>()));
                n.formulas = make_formula_set(std::move(fs));
            } else {
                n.formula = parse_formula(jn.at("formula").get<std::string>());
            }
            if (jn.contains("rule")) n.rule = detail::resolve_instance(d, jn.at("rule"));
            if (jn.contains("foe")) n.foe = detail::resolve_instance(d, jn.at("foe"));
            cert.rad.nodes.push_back(std::move(n));
        }
        for (const auto& ja : j.at("arcs")) {
            RadArc a{ja.at("from").get<std::size_t>(), ja.at("to").get<std::size_t>(), ArcClass::necessary};
            const auto cls = ja.at("class").get<std::string>();
            if (cls == "necessary") a.cls = ArcClass::necessary;
            else if (cls == "optional") a.cls = ArcClass::optional;
            else if (cls == "irrelevant") a.cls = ArcClass::irrelevant;
            else throw Error("unknown arc class " + cls);
            cert.rad.arcs.push_back(a);
        }
        return cert;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed certificate: ") + e.what());
    }
}

/// Graphviz rendering: one box per node labelled with shape, algorithm,
/// value and subject; dashed arcs are optional.
inline std::string to_dot(const PlausibleDescription& d, const Certificate& cert) {
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o += '\\';
            o += c;
        }
        return o;
    };
    std::ostringstream out;
    out << "// format_version " << certificate_format_version << "\n";
    out << "digraph " << to_string(cert.kind) << " {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < cert.rad.nodes.size(); ++i) {
        const auto& n = cert.rad.nodes[i];
        std::string subject;
        if (n.shape == NodeShape::set) {
            subject = "{";
            for (std::size_t k = 0; k < n.formulas.size(); ++k) subject += (k ? ", " : "") + to_string(n.formulas[k]);
            subject += "}";
        } else {
            subject = to_string(n.formula);
        }
        std::string label = std::string(to_string(n.shape)) + " " + std::string(name(n.alg)) + " " + to_string(n.value) +
                            "\\n" + esc(subject);
        if (n.rule) label += "\\nrule " + esc(d.label(*n.rule));
        if (n.foe) label += "\\nfoe " + esc(d.label(*n.foe));
        out << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    for (const auto& a : cert.rad.arcs)
        out << "  n" << a.parent << " -> n" << a.child << (a.cls == ArcClass::optional ? " [style=dashed]" : "") << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    std::vector<std::string> problems;
    std::optional<ProofValue> root_value;  // recomputed bottom-up

    bool ok() const { return problems.empty(); }
};

/// Checks that the certificate is an evaluation rad: a rooted acyclic
/// digraph whose root is (a, (), x), whose arcs are full-evaluation arcs
/// carrying the right classification, keeping every necessary child and
/// exactly one optional child where the parent's value permits a choice,
/// and whose node values agree with a bottom-up recomputation.
inline ValidationReport validate_certificate(const PlausibleDescription& d, const Certificate& cert) {
    ValidationReport rep;
    const auto& rad = cert.rad;
    auto problem = [&](const std::string& s) { rep.problems.push_back(s); };
    const auto n = rad.nodes.size();
    if (n == 0 || rad.root >= n) {
        problem("root is not a node");
        return rep;
    }
    const auto& root = rad.nodes[rad.root];
    if (!root.history.empty()) problem("root history is not empty");
    if (root.alg != cert.alg) problem("root algorithm differs from the certificate's");
    if (root.shape != NodeShape::formula && root.shape != NodeShape::set) problem("root is neither a formula nor a set node");

    std::vector<std::vector<std::size_t>> kids(n);
    std::vector<std::size_t> parents(n, 0);
    std::set<std::pair<std::size_t, std::size_t>> seen_arcs;
    for (const auto& a : rad.arcs) {
        if (a.parent >= n || a.child >= n) {
            problem("arc names a missing node");
            return rep;
        }
        if (!seen_arcs.insert({a.parent, a.child}).second) problem("duplicate arc");
        kids[a.parent].push_back(a.child);
        ++parents[a.child];
    }
    if (parents[rad.root] != 0) problem("root has a parent");

    // Reachability and acyclicity.
    enum class Mark : unsigned char { fresh, active, done };
    std::vector<Mark> mark(n, Mark::fresh);
    std::vector<std::size_t> order;  // children before parents
    bool cyclic = false;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{rad.root, 0}};
    mark[rad.root] = Mark::active;
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i < kids[v].size()) {
            auto c = kids[v][i++];
            if (mark[c] == Mark::active) cyclic = true;
            else if (mark[c] == Mark::fresh) {
                mark[c] = Mark::active;
                stack.emplace_back(c, 0);
            }
        } else {
            mark[v] = Mark::done;
            order.push_back(v);
            stack.pop_back();
        }
    }
    if (cyclic) {
        problem("the digraph has a cycle");
        return rep;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (mark[v] == Mark::fresh) problem("node " + std::to_string(v) + " is unreachable from the root");

    // Node well-formedness.
    for (std::size_t v = 0; v < n; ++v) {
        const auto& p = rad.nodes[v];
        const auto co = co_algorithm(root.alg);
        for (const auto& e : p.history.entries())
            if (e.tag != root.alg && e.tag != co) problem("node " + std::to_string(v) + " has a foreign history tag");
        if (p.alg != root.alg && p.alg != co) problem("node " + std::to_string(v) + " has a foreign algorithm");
        if ((p.shape == NodeShape::support || p.shape == NodeShape::defeat) != p.rule.has_value() ||
            (p.shape == NodeShape::defeat) != p.foe.has_value())
            problem("node " + std::to_string(v) + " has the wrong fields for its shape");
    }
    if (!rep.ok()) return rep;

    // Arcs against the full evaluation rad and the classification cases.
    std::map<std::pair<std::size_t, std::size_t>, ArcClass> stored;
    for (const auto& a : rad.arcs) stored[{a.parent, a.child}] = a.cls;
    for (std::size_t v = 0; v < n; ++v) {
        const auto& p = rad.nodes[v];
        const auto tag = "node " + std::to_string(v) + ": ";
        std::vector<RadNode> full;
        try {
            full = full_children(d, p);
        } catch (const Error& e) {
            problem(tag + "outside the domain of the evaluation functions (" + e.what() + ")");
            continue;
        }
        std::map<std::string, std::size_t> full_index;
        for (std::size_t k = 0; k < full.size(); ++k) full_index.emplace(full[k].key(), k);
        std::size_t optional_kept = 0;
        for (auto c : kids[v]) {
            const auto& child = rad.nodes[c];
            if (!full_index.count(child.key())) {
                problem(tag + "child " + std::to_string(c) + " is not one of its evaluation children");
                continue;
            }
            const auto cls = classify(p, child);
            if (cls != stored[{v, c}]) problem(tag + "arc to " + std::to_string(c) + " is misclassified");
            if (cls == ArcClass::irrelevant) problem(tag + "irrelevant child " + std::to_string(c) + " was kept");
            if (cls == ArcClass::optional) ++optional_kept;
        }
        // The parent's value alone decides whether every child is necessary.
        const bool all_necessary = full.empty() ? false : classify(p, full.front()) == ArcClass::necessary;
        if (all_necessary) {
            if (kids[v].size() != full.size()) problem(tag + "a necessary child is missing");
        } else if (!full.empty()) {
            // A support node whose rule is already in its history is -1 on
            // its own, so it needs no child to explain the value.
            const bool blocked = p.shape == NodeShape::support && p.history.contains({p.alg, *p.rule});
            if (blocked && kids[v].empty()) continue;
            if (optional_kept != 1 || kids[v].size() != 1)
                problem(tag + "must keep exactly one optional child, keeps " + std::to_string(kids[v].size()));
        }
    }
    if (!rep.ok()) return rep;

    // Bottom-up recomputation from the kept children.
    std::vector<ProofValue> value(n, ProofValue::minus);
    for (auto v : order) {
        const auto& p = rad.nodes[v];
        ProofValue got = ProofValue::minus;
        switch (p.shape) {
        case NodeShape::set: {
            got = ProofValue::plus;
            for (auto c : kids[v])
                if (value[c] == ProofValue::minus) got = ProofValue::minus;
            break;
        }
        case NodeShape::formula: {
            const bool fact = classical::entails(d.axioms(), p.formula);
            if (p.alg == Algorithm::phi || fact) {
                got = fact ? ProofValue::plus : ProofValue::minus;
                break;
            }
            for (auto c : kids[v])
                if (value[c] == ProofValue::plus) got = ProofValue::plus;
            break;
        }
        case NodeShape::support: {
            got = ProofValue::plus;
            if (p.history.contains({p.alg, *p.rule})) got = ProofValue::minus;
            for (auto c : kids[v])
                if (value[c] == ProofValue::minus) got = ProofValue::minus;
            break;
        }
        case NodeShape::defeat: {
            for (auto c : kids[v]) {
                const auto contribution = is_disabling_child(p, rad.nodes[c]) ? -value[c] : value[c];
                if (contribution == ProofValue::plus) got = ProofValue::plus;
            }
            break;
        }
        }
        value[v] = got;
        if (got != p.value)
            problem("node " + std::to_string(v) + " stores " + to_string(p.value) + " but recomputes to " + to_string(got));
    }
    rep.root_value = value[rad.root];
    const auto expected_kind = value[rad.root] == ProofValue::plus ? CertificateKind::proof : CertificateKind::disproof;
    if (cert.kind != expected_kind) problem("certificate kind does not match the root value");
    return rep;
}

}  // namespace plogic
