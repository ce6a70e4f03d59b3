#pragma once

// Command-line front end.  Exit codes:
//   0  success, or +1 for `prove`
//   1  -1 for `prove`, a failing audit, or an invalid certificate
//   2  usage error
//   3  file cannot be read or written
//   4  syntax error in the description
//   5  semantic error in the description
//   6  unknown algorithm
//   7  query does not parse
//   8  query is not ground

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plogic/audit.hpp"
#include "plogic/certificate.hpp"
#include "plogic/parser.hpp"
#include "plogic/rad.hpp"
#include "plogic/truth.hpp"

namespace plogic::cli {

enum ExitCode : int {
    ok = 0,
    negative = 1,
    usage = 2,
    file_error = 3,
    syntax_error = 4,
    semantic_error = 5,
    unknown_algorithm = 6,
    bad_formula = 7,
    non_ground_query = 8,
};

namespace detail {

// Carries an exit code out of a command.
struct Failure {
    int code;
    std::string message;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{file_error, "cannot read " + path};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline PlausibleDescription load(const std::string& path) {
    const auto text = read_file(path);
    DescriptionSpec spec;
    try {
        spec = parse_description(text);
    } catch (const ParseError& e) {
        throw Failure{syntax_error, path + ":" + e.what()};
    }
    try {
        return build_description(std::move(spec));
    } catch (const Error& e) {
        throw Failure{semantic_error, path + ": " + e.what()};
    }
}

inline Algorithm algorithm(const std::string& s) {
    auto a = parse_algorithm(s);
    if (!a) throw Failure{unknown_algorithm, "unknown algorithm '" + s + "' (expected phi, pi, psi, theta, thetap, beta, psip or pip)"};
    return *a;
}

inline Formula query(const std::string& s) {
    Formula f;
    try {
        f = parse_formula(s);
    } catch (const Error& e) {
        throw Failure{bad_formula, "cannot parse query '" + s + "': " + e.what()};
    }
    if (!is_ground(f)) throw Failure{non_ground_query, "query '" + s + "' has variables; queries must be ground"};
    return f;
}

inline void write_file(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content)) throw Failure{file_error, "cannot write " + path};
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plausible reasoning: proofs, truth values and certificates over description files", "plogic"};
    app.require_subcommand(1);

    std::string file, alg_name, formula_text, out_path, format = "json", cert_path;
    std::vector<std::string> queries;
    bool no_memo_recheck = false;

    auto* check = app.add_subcommand("check", "Parse and build a description, then summarise it");
    check->add_option("file", file, "Description file")->required();

    auto add_query = [&](CLI::App* sub) {
        sub->add_option("file", file, "Description file")->required();
        sub->add_option("formula", formula_text, "Ground query formula")->required();
        sub->add_option("-a,--alg", alg_name, "Algorithm: phi, pi, psi, theta, thetap, beta, psip, pip")->required();
    };
    auto* prove = app.add_subcommand("prove", "Print P(alg, (), formula) as +1 or -1");
    add_query(prove);
    auto* truth = app.add_subcommand("truth", "Print the plausible truth value a, t, f or u");
    add_query(truth);
    auto* rad = app.add_subcommand("rad", "Write the evaluation rad certificate");
    add_query(rad);
    rad->add_option("-o,--out", out_path, "Output path (default: standard output)");
    rad->add_option("-f,--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    auto* audit_cmd = app.add_subcommand("audit", "Check hierarchy, coherence, 2-consistency and depth over queries");
    audit_cmd->add_option("file", file, "Description file")->required();
    audit_cmd->add_option("-q,--query", queries, "Query formula (repeatable; default: every consequent and its negation)");
    audit_cmd->add_flag("--no-memo-recheck", no_memo_recheck, "Skip the cross-check under history-keyed memoisation");

    auto* verify = app.add_subcommand("verify", "Validate a JSON certificate against a description");
    verify->add_option("file", file, "Description file")->required();
    verify->add_option("certificate", cert_path, "Certificate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (check->parsed()) {
            auto d = detail::load(file);
            std::size_t counts[3] = {0, 0, 0};
            for (const auto& ri : d.instances()) ++counts[static_cast<int>(ri.rule.kind)];
            out << "ok\n"
                << "constants: " << d.constants().size() << "\n"
                << "axiom clauses: " << d.axiom_clauses().size() << " (" << d.axioms().size() << " ground)\n"
                << "rule instances: " << d.instance_count() << " (strict " << counts[0] << ", defeasible " << counts[1]
                << ", warning " << counts[2] << ")\n"
                << "priority pairs: " << d.priority_pairs().size() << "\n"
                << "hash: " << description_hash(d.spec()) << "\n";
            return ok;
        }
        if (prove->parsed() || truth->parsed() || rad->parsed()) {
            auto d = detail::load(file);
            const auto a = detail::algorithm(alg_name);
            const auto f = detail::query(formula_text);
            Evaluator ev(d);
            if (prove->parsed()) {
                const auto v = ev.prove(a, f);
                out << to_string(v) << "\n";
                return v == ProofValue::plus ? ok : negative;
            }
            if (truth->parsed()) {
                out << to_char(truth_value(ev, a, f)) << "\n";
                return ok;
            }
            auto cert = extract_certificate(build_evaluation_rad(ev, a, f));
            const auto text = format == "dot" ? to_dot(d, cert) : to_json(d, cert).dump(2) + "\n";
            detail::write_file(out_path, text, out);
            if (!out_path.empty() && out_path != "-")
                out << name(a) << "-" << to_string(cert.kind) << " of " << to_string(f) << " with "
                    << cert.rad.nodes.size() << " nodes written to " << out_path << "\n";
            return ok;
        }
        if (audit_cmd->parsed()) {
            auto d = detail::load(file);
            std::vector<Formula> qs;
            for (const auto& q : queries) qs.push_back(detail::query(q));
            if (queries.empty()) qs = default_query_universe(d);
            auto rep = audit(d, qs, AuditOptions{.recheck_memo_modes = !no_memo_recheck});
            out << "queries: " << qs.size() << "\n";
            for (const auto& row : rep.rows)
                out << (row.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(32) << row.check << row.detail << "\n";
            return rep.all_pass() ? ok : negative;
        }
        if (verify->parsed()) {
            auto d = detail::load(file);
            json j;
            try {
                j = json::parse(detail::read_file(cert_path));
            } catch (const json::exception& e) {
                throw detail::Failure{negative, "certificate is not valid JSON: " + std::string(e.what())};
            }
            Certificate cert;
            try {
                cert = certificate_from_json(d, j);
            } catch (const Error& e) {
                throw detail::Failure{negative, e.what()};
            }
            auto rep = validate_certificate(d, cert);
            if (!rep.ok()) {
                for (const auto& p : rep.problems) err << "invalid: " << p << "\n";
                return negative;
            }
            out << "valid " << name(cert.alg) << "-" << to_string(cert.kind) << ", root value "
                << to_string(*rep.root_value) << "\n";
            return ok;
        }
    } catch (const detail::Failure& f) {
        err << "plogic: " << f.message << "\n";
        return f.code;
    } catch (const DescriptionError& e) {
        // Lazily detected ill-founded priorities.
        err << "plogic: " << e.what() << "\n";
        return semantic_error;
    } catch (const Error& e) {
        err << "plogic: " << e.what() << "\n";
        return semantic_error;
    }
    return usage;
}

}  // namespace plogic::cli
