#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "plogic/cli.hpp"
#include "plogic/parser.hpp"
#include "support/fixtures.hpp"

using namespace plogic;
using fixtures::F;

TEST(Parser, Formulas) {
    EXPECT_EQ(F("a & b | c"), Formula::disjunction({Formula::conjunction({F("a"), F("b")}), F("c")}));
    EXPECT_EQ(F("or(s1, s2, s3)"), F("s1 | s2 | s3"));
    EXPECT_EQ(F("not(and(a, b))"), negate(F("a & b")));
    EXPECT_EQ(F("~~a"), F("a"));
    EXPECT_EQ(F("p(nancy)."), F("p(nancy)"));
    EXPECT_FALSE(is_ground(F("p(X)")));
}

TEST(Parser, Description) {
    const auto spec = parse_description(fixtures::text("nautilus"));
    EXPECT_EQ(spec.constants, std::vector<std::string>{"nancy"});
    EXPECT_EQ(spec.axioms.size(), 3u);
    ASSERT_EQ(spec.rules.size(), 1u);
    EXPECT_EQ(spec.rules[0].name, "noshell");
    EXPECT_EQ(spec.rules[0].kind, RuleKind::defeasible);
}

TEST(Parser, PrioritiesAndWarnings) {
    const auto spec = parse_description(
        "const a, b.\n"
        "def r: p(X) => q(X).\n"
        "wrn w: ~> ~q(a).\n"
        "prefer r[X=a] > w.\n");
    ASSERT_EQ(spec.rules.size(), 2u);
    EXPECT_EQ(spec.rules[1].kind, RuleKind::warning);
    ASSERT_EQ(spec.priorities.size(), 1u);
    EXPECT_EQ(spec.priorities[0].superior, "r");
    ASSERT_TRUE(spec.priorities[0].superior_at);
    EXPECT_FALSE(spec.priorities[0].inferior_at);
}

TEST(Parser, ErrorsCarryPosition) {
    try {
        parse_description("axiom a.\ndef r: a = b.\n");
        FAIL() << "expected a ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 10u);
    }
    EXPECT_THROW(parse_description("axiom a"), ParseError);
    EXPECT_THROW(parse_description("fact a."), ParseError);
    EXPECT_THROW(parse_formula("and()"), ParseError);
    EXPECT_THROW(parse_formula("a $ b"), ParseError);
}

TEST(Parser, RejectsWrittenStrictRules) {
    EXPECT_THROW(parse_description("def r: a -> b."), ParseError);
}

TEST(Parser, PrintParseRoundTrip) {
    for (const auto& fixture : fixtures::all()) {
        const auto spec = parse_description(fixtures::text(fixture));
        const auto printed = print_description(spec);
        EXPECT_EQ(print_description(parse_description(printed)), printed) << fixture;
        EXPECT_EQ(description_hash(parse_description(printed)), description_hash(spec)) << fixture;
    }
}

TEST(Parser, AxiomSplitsIntoClauses) {
    const auto d = load_description("axiom (~s1 & ~s2) | (~s3 & ~s4).");
    EXPECT_EQ(d.axiom_clauses().size(), 4u);
}

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli_run(std::vector<std::string> args) {
    args.insert(args.begin(), "plogic");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture_file(const std::string& name) { return fixtures::path(name); }

std::filesystem::path scratch(const std::string& name, const std::string& content = {}) {
    const auto p = std::filesystem::temp_directory_path() / ("plogic_test_" + name);
    if (!content.empty()) std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST(Cli, Prove) {
    auto r = cli_run({"prove", fixture_file("ambiguity"), "e", "-a", "beta"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_EQ(r.out, "+1\n");
    r = cli_run({"prove", fixture_file("ambiguity"), "e", "--alg", "pi"});
    EXPECT_EQ(r.code, cli::negative);
    EXPECT_EQ(r.out, "-1\n");
    r = cli_run({"prove", fixture_file("lottery3"), "or(s1,s2,s3)", "-a", "phi"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_EQ(r.out, "+1\n");
}

TEST(Cli, Truth) {
    auto r = cli_run({"truth", fixture_file("ambiguity"), "d", "-a", "beta"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_EQ(r.out, "u\n");
}

TEST(Cli, Check) {
    auto r = cli_run({"check", fixture_file("nautilus")});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_NE(r.out.find("strict 7, defeasible 1"), std::string::npos) << r.out;
}

TEST(Cli, ErrorCodes) {
    EXPECT_EQ(cli_run({"prove", fixture_file("ambiguity"), "e", "-a", "gamma"}).code, cli::unknown_algorithm);
    EXPECT_EQ(cli_run({"prove", fixture_file("ambiguity"), "e &", "-a", "beta"}).code, cli::bad_formula);
    EXPECT_EQ(cli_run({"prove", fixture_file("nautilus"), "s(X)", "-a", "beta"}).code, cli::non_ground_query);
    EXPECT_EQ(cli_run({"prove", "/nonexistent/file.pl", "e", "-a", "beta"}).code, cli::file_error);
    EXPECT_EQ(cli_run({"prove", scratch("syntax.pl", "axiom a\n").string(), "a", "-a", "beta"}).code,
              cli::syntax_error);
    EXPECT_EQ(cli_run({"check", scratch("semantic.pl", "axiom a.\naxiom ~a.\n").string()}).code,
              cli::semantic_error);
    EXPECT_EQ(cli_run({"prove", fixture_file("ambiguity")}).code, cli::usage);
    EXPECT_EQ(cli_run({}).code, cli::usage);
    EXPECT_EQ(cli_run({"frobnicate"}).code, cli::usage);
}

TEST(Cli, RadAndVerify) {
    const auto cert = scratch("cert.json");
    auto r = cli_run({"rad", fixture_file("ambiguity"), "e", "-a", "beta", "-o", cert.string()});
    ASSERT_EQ(r.code, cli::ok) << r.err;
    EXPECT_NE(r.out.find("beta-proof"), std::string::npos);
    r = cli_run({"verify", fixture_file("ambiguity"), cert.string()});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_NE(r.out.find("valid beta-proof"), std::string::npos);
    // The same certificate does not belong to another description.
    EXPECT_EQ(cli_run({"verify", fixture_file("lottery3"), cert.string()}).code, cli::negative);

    r = cli_run({"rad", fixture_file("ambiguity"), "e", "-a", "beta"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_EQ(json::parse(r.out).at("kind"), "proof");
    r = cli_run({"rad", fixture_file("ambiguity"), "e", "-a", "beta", "-f", "dot"});
    EXPECT_NE(r.out.find("digraph"), std::string::npos);
    EXPECT_EQ(cli_run({"rad", fixture_file("ambiguity"), "e", "-a", "beta", "-f", "svg"}).code, cli::usage);
    std::filesystem::remove(cert);
}

TEST(Cli, VerifyRejectsGarbage) {
    EXPECT_EQ(cli_run({"verify", fixture_file("ambiguity"), scratch("garbage.json", "{not json").string()}).code,
              cli::negative);
}

TEST(Cli, Audit) {
    auto r = cli_run({"audit", fixture_file("lottery3")});
    EXPECT_EQ(r.code, cli::ok) << r.out;
    EXPECT_NE(r.out.find("PASS  coherence"), std::string::npos);
    r = cli_run({"audit", fixture_file("ambiguity"), "-q", "e", "-q", "~d", "--no-memo-recheck"});
    EXPECT_EQ(r.code, cli::ok) << r.out;
    EXPECT_NE(r.out.find("queries: 2"), std::string::npos);
}
