// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "plogic/plogic.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/properties.hpp"

using namespace plogic;
using fixtures::F;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome from(const properties::Violations& v, const std::string& ok_detail) {
    if (v.empty()) return {true, ok_detail};
    std::string s = std::to_string(v.size()) + (v.size() >= 20 ? "+" : "") + " violations, first: " + v.front();
    return {false, s};
}

ProofValue prove(const PlausibleDescription& d, Algorithm a, const std::string& f) {
    return Evaluator(d).prove(a, F(f));
}

std::vector<Formula> literals_of(const PlausibleDescription& d) {
    std::set<Atom> atoms;
    for (const auto& ri : d.instances()) {
        oracle::atoms_of(ri.rule.consequent, atoms);
        for (const auto& g : ri.rule.antecedents) oracle::atoms_of(g, atoms);
    }
    std::vector<Formula> out;
    for (const auto& a : atoms) {
        out.emplace_back(positive(a));
        out.emplace_back(negative(a));
    }
    return out;
}

constexpr std::size_t corpus_size = 300;

const std::vector<properties::Case>& corpus() {
    static const auto c = properties::corpus(1000, corpus_size);
    return c;
}

Outcome over_corpus(properties::Violations (*check)(const properties::Case&), const std::string& what) {
    properties::Violations all;
    for (const auto& c : corpus()) {
        auto v = check(c);
        all.insert(all.end(), v.begin(), v.end());
    }
    return from(all, std::to_string(corpus().size()) + " descriptions, " + what);
}

Outcome clause_compilation() {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<Literal> lits;
        for (std::size_t i = 0; i < n; ++i) lits.push_back(positive(prop("l" + std::to_string(i + 1))));
        const auto rules = clause_rules(Clause(lits));
        if (rules.size() != (std::size_t{1} << n) - 1)
            return {false, "n=" + std::to_string(n) + " gave " + std::to_string(rules.size()) + " rules"};
    }
    const std::set<std::string> expected{
        "{} -> l1 | l2 | l3",   "{~l1} -> l2 | l3",     "{~l2} -> l1 | l3",     "{~l3} -> l1 | l2",
        "{~l2 & ~l3} -> l1",    "{~l1 & ~l3} -> l2",    "{~l1 & ~l2} -> l3",
    };
    std::set<std::string> got;
    for (const auto& r : clause_rules(Clause({positive(prop("l1")), positive(prop("l2")), positive(prop("l3"))})))
        got.insert(to_string(r));
    if (got != expected) return {false, "three-literal clause rules differ from the expected seven"};
    return {true, "sizes 2^n-1 for n=1..6, three-literal set exact"};
}

Outcome non_monotonicity() {
    const auto base = fixtures::load("nautilus");
    const auto known = fixtures::load("nautilus_known");
    const auto v1 = prove(base, Algorithm::beta, "~s(nancy)");
    const auto v2 = prove(known, Algorithm::phi, "s(nancy)");
    const auto v3 = prove(known, Algorithm::beta, "~s(nancy)");
    const bool ok = v1 == ProofValue::plus && v2 == ProofValue::plus && v3 == ProofValue::minus;
    return {ok, "beta ~s(nancy) " + to_string(v1) + "; with n(nancy): phi s(nancy) " + to_string(v2) +
                    ", beta ~s(nancy) " + to_string(v3)};
}

Outcome ambiguity() {
    const auto d = fixtures::load("ambiguity");
    const auto be = prove(d, Algorithm::beta, "e");
    const auto pe = prove(d, Algorithm::pi, "e");
    const auto td = truth_value(d, Algorithm::beta, F("d"));
    oracle::Oracle o(d);
    const bool oracle_ok = o.value(Algorithm::pi, F("e")) == -1 && o.value(Algorithm::beta, F("d")) == -1 &&
                           o.value(Algorithm::beta, F("~d")) == -1;
    const bool ok = be == ProofValue::plus && pe == ProofValue::minus && td == TruthValue::u && oracle_ok;
    return {ok, "beta e " + to_string(be) + ", pi e " + to_string(pe) + ", V(beta,d) " + std::string(1, to_char(td)) +
                    (oracle_ok ? ", oracle agrees" : ", oracle disagrees")};
}

Outcome left_factual_disjunction() {
    const auto goal = "s5 | s6 | s7";
    const auto g = prove(fixtures::load("lottery7_g"), Algorithm::beta, goal);
    const auto h = prove(fixtures::load("lottery7_h"), Algorithm::beta, goal);
    const auto gh = prove(fixtures::load("lottery7_gh"), Algorithm::beta, goal);
    const bool ok = g == ProofValue::plus && h == ProofValue::plus && gh == ProofValue::minus;
    return {ok, "beta on s5|s6|s7: R+g " + to_string(g) + ", R+h " + to_string(h) + ", R+or(g,h) " + to_string(gh) +
                    " (expected +1, +1, -1)"};
}

Outcome non_three_consistency() {
    const auto d = fixtures::load("lottery3");
    const std::vector<Formula> u{F("~s1"), F("~s2"), F("s1 | s2")};
    Evaluator ev(d);
    oracle::Oracle o(d);
    std::string detail;
    bool all_proved = true;
    for (const auto& f : u) {
        const auto v = ev.prove(Algorithm::beta, f);
        all_proved = all_proved && v == ProofValue::plus && o.value(Algorithm::beta, f) == 1;
        detail += to_string(f) + " " + to_string(v) + ", ";
    }
    const bool sat = classical::is_satisfiable(d.axioms(), u);
    return {all_proved && !sat, detail + "jointly satisfiable with axioms: " + (sat ? "yes" : "no")};
}

Outcome certificates() {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    auto run = [&](const PlausibleDescription& d, const std::vector<Formula>& qs, const std::string& label) {
        for (auto a : all_algorithms) {
            Evaluator ev(d);
            for (const auto& q : qs) {
                auto cert = extract_certificate(build_evaluation_rad(ev, a, q));
                auto round = certificate_from_json(d, to_json(d, cert));
                for (const auto* c : {&cert, &round}) {
                    auto rep = validate_certificate(d, *c);
                    ++checked;
                    if (!rep.ok() || rep.root_value != ev.prove(a, q))
                        if (failures.size() < 5)
                            failures.push_back(label + std::string(name(a)) + " " + to_string(q) + ": " +
                                               (rep.ok() ? "root value differs" : rep.problems.front()));
                }
            }
        }
    };
    for (const auto& name : fixtures::all()) {
        const auto d = fixtures::load(name);
        run(d, literals_of(d), name + ": ");
    }
    for (const auto& c : corpus()) run(c.d, c.queries, properties::where(c));
    if (!failures.empty()) return {false, failures.front()};
    return {true, std::to_string(checked) + " certificates re-validated, including JSON round trips"};
}

Outcome truth_suite() {
    properties::Violations all;
    for (const auto& name : fixtures::all()) {
        const auto d = fixtures::load(name);
        auto v = properties::truth_theory(d, literals_of(d), name + ": ");
        all.insert(all.end(), v.begin(), v.end());
    }
    for (const auto& c : corpus()) {
        auto v = properties::truth_theory(c);
        all.insert(all.end(), v.begin(), v.end());
    }
    return from(all, std::to_string(fixtures::all().size()) + " fixtures and " + std::to_string(corpus().size()) +
                         " descriptions");
}

Outcome termination() {
    auto v = [] {
        properties::Violations all;
        for (const auto& c : corpus()) {
            auto w = properties::depth_bound(c);
            all.insert(all.end(), w.begin(), w.end());
        }
        return all;
    }();
    // Audits must finish and keep within the depth bound; their other rows
    // are covered by the criteria above.  The memo-mode cross-check is left
    // to criterion 7, since the history-keyed mode takes close to a minute
    // on each of the larger lottery fixtures.
    std::size_t audits = 0;
    auto run_audit = [&](const PlausibleDescription& d, std::span<const Formula> qs, const std::string& label) {
        const auto rep = audit(d, qs, AuditOptions{.recheck_memo_modes = false});
        ++audits;
        for (const auto& row : rep.rows)
            if (row.check == "depth bound" && !row.pass) v.push_back(label + row.detail);
    };
    for (const auto& name : fixtures::all()) {
        const auto d = fixtures::load(name);
        run_audit(d, default_query_universe(d), name + ": ");
    }
    for (const auto& c : corpus()) run_audit(c.d, c.literals, properties::where(c));
    return from(v, "depth within 2|instances|+4; " + std::to_string(audits) + " audits completed");
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number.
    std::set<std::size_t> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"clause compilation", clause_compilation},
        {"non-monotonicity", non_monotonicity},
        {"ambiguity blocking", ambiguity},
        {"left factual disjunction", left_factual_disjunction},
        {"non-3-consistency witness", non_three_consistency},
        {"hierarchy", [] { return over_corpus(properties::hierarchy, "all literals"); }},
        {"coherence and oracle equivalence",
         [] { return over_corpus(properties::oracle_agreement, "8 algorithms, memo on and off"); }},
        {"strong 2-consistency", [] { return over_corpus(properties::two_consistency, "non-primed algorithms"); }},
        {"closure properties", [] { return over_corpus(properties::closure, "empty and random histories"); }},
        {"truth theory", truth_suite},
        {"certificate validity", certificates},
        {"termination bound", termination},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
                  << " [" << ms.count() << " ms]" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    const auto ran = only.empty() ? criteria.size() : only.size();
    std::cout << (ran - static_cast<std::size_t>(failed)) << "/" << ran << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
