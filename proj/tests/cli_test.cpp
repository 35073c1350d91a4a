#include <gtest/gtest.h>

#include <sstream>

#include "battery.hpp"
#include "cli.hpp"

namespace eg::cli {
namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "egc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    CliConfig cfg;
    Result r;
    if (auto code = parse_arguments(static_cast<int>(argv.size()), argv.data(), cfg, out, err)) {
        r.code = *code;
    } else {
        r.code = run(cfg, in, out, err);
    }
    r.out = out.str();
    r.err = err.str();
    return r;
}

TEST(Cli, CompleteUnion) {
    const Result r = invoke({"complete", "--simplify", test::corpus_path("union")});
    EXPECT_EQ(r.code, Ok);
    EXPECT_EQ(r.out, "forall V (p(V) <-> #false)\nforall V (q(V) <-> #false)\nforall V (r(V) <-> p(V) | q(V))\n");
}

TEST(Cli, CompleteFromStdinUtf8) {
    const Result r = invoke({"complete", "--simplify", "--format", "utf8"}, "{p(1..8)}.");
    EXPECT_EQ(r.code, Ok);
    EXPECT_EQ(r.out, "∀V (p(V) → V ∈ 1..8)\n");
}

TEST(Cli, CompleteIntegers) {
    const Result r = invoke({"complete", "--integers", test::corpus_path("fact")});
    EXPECT_EQ(r.code, Ok);
    EXPECT_EQ(r.out, "forall X1 (p(X1) -> exists V (V in X1+1))\nforall N (p(N) <-> 1 <= N & N <= 8)\n");
}

TEST(Cli, Trace) {
    const Result r = invoke({"complete", "--simplify", "--trace", test::corpus_path("fact")});
    EXPECT_EQ(r.code, Ok);
    EXPECT_EQ(r.out, "\nforall V (p(V) <-> V in 1..8)\n");
    const Result u = invoke({"complete", "--simplify", "--trace", test::corpus_path("union")});
    EXPECT_EQ(u.out.substr(0, 3), "1. ");
}

TEST(Cli, TightSchur) {
    const Result r = invoke({"tight", test::corpus_path("schur_2_4")});
    EXPECT_EQ(r.code, Ok);
    EXPECT_EQ(r.out, "tight\ncovered/1 -> in/2\n");
    EXPECT_EQ(invoke({"tight"}, "p :- p.").out, "not tight (cycle p/0 -> p/0)\np/0 -> p/0\n");
    EXPECT_NE(invoke({"tight", "--format", "dot", test::corpus_path("schur_2_4")}).out.find("digraph"), std::string::npos);
}

TEST(Cli, VerifyNonTight) {
    const Result r = invoke({"verify", test::corpus_path("p_if_p")});
    EXPECT_EQ(r.code, Ok);
    EXPECT_NE(r.out.find("not applicable (not tight)"), std::string::npos);
    EXPECT_NE(r.out.find("completion model, not stable: {p}"), std::string::npos);
}

TEST(Cli, Models) {
    EXPECT_EQ(invoke({"models", test::corpus_path("schur_1_1")}).out, "{covered(1), in(1,1)}\n");
    EXPECT_EQ(invoke({"models"}, "p :- not q. q :- not p.").out, "{p}\n{q}\n");
    const nlohmann::json j = nlohmann::json::parse(invoke({"models", "--format", "json"}, "p(1). q :- p(1).").out);
    const nlohmann::json expected = nlohmann::json::array({nlohmann::json::array({"p(1)", "q"})});
    EXPECT_EQ(j["models"], expected);
    EXPECT_EQ(j["approximated"], false);
}

TEST(Cli, Ground) {
    const Result r = invoke({"ground"}, "p(1..2). q :- p(1), not r.");
    EXPECT_EQ(r.code, Ok);
    EXPECT_NE(r.out.find("p(1)"), std::string::npos);
    EXPECT_NE(r.out.find("q"), std::string::npos);
}

TEST(Cli, JsonSchema) {
    const Result r = invoke({"complete", "--simplify", "--format", "json", test::corpus_path("choice")});
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], kSchema);
    EXPECT_EQ(j["vocabulary"][0]["name"], "p");
    const auto& f = j["definitions"][0]["formula"];
    EXPECT_EQ(f["kind"], "forall");
    EXPECT_EQ(f["vars"][0]["sort"], "general");
    EXPECT_EQ(f["body"]["kind"], "implies");
    EXPECT_EQ(f["body"]["rhs"]["kind"], "member");
    EXPECT_EQ(f["body"]["rhs"]["term"]["kind"], "interval");

    const nlohmann::json e = nlohmann::json::parse(invoke({"export", "--format", "json"}, "q(W) :- #sum{X*X : p(X)} = W.").out);
    EXPECT_EQ(e["tight"], true);
    EXPECT_EQ(e["dependencies"][0]["from"], "q/1");
    EXPECT_EQ(e["definitions"][1]["formula"]["body"]["rhs"]["kind"], "exists");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"complete"}, "p(").code, InputError);
    EXPECT_NE(invoke({"complete"}, "p(").err.find("<stdin>:1:"), std::string::npos);
    EXPECT_EQ(invoke({"complete", "/nonexistent/file.lp"}).code, InputError);
    EXPECT_EQ(invoke({"frobnicate"}).code, InputError);
    EXPECT_EQ(invoke({"complete", "--format", "dot"}, "p.").code, InputError);
    EXPECT_EQ(invoke({"models", "--max-atoms", "0"}, "p.").code, InputError);
    EXPECT_EQ(invoke({"models", "--max-atoms", "10"}, "{p(1..40)}.").code, ResourceLimit);
    EXPECT_EQ(invoke({"models", "--domain", "X"}, "p.").code, InputError);
}

TEST(Cli, DomainAndWindow) {
    // Without extra values the unsafe rule has no instance to fire on.
    EXPECT_EQ(invoke({"models", "--domain", "a,b"}, "p(X) :- X = a.").out, "{p(a)}\n");
    EXPECT_EQ(invoke({"models", "--int-min", "0", "--int-max", "2"}, "{p(X)} :- X = 0..1.").out.size(),
              invoke({"models"}, "{p(X)} :- X = 0..1.").out.size());
    EXPECT_EQ(invoke({"models", "--int-min", "3", "--int-max", "1"}, "p.").code, InputError);
}

TEST(Cli, SeedPrograms) {
    const Result a = invoke({"verify", "--seed", "5"});
    const Result b = invoke({"verify", "--seed", "5"});
    EXPECT_EQ(a.code, Ok);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, 2), "% ");
}

TEST(Cli, Deterministic) {
    for (const auto& name : {"schur_2_4", "queens4", "rule24"}) {
        for (const auto& cmd : {"complete", "verify", "ground", "export"}) {
            std::vector<std::string> args{cmd, test::corpus_path(name)};
            if (std::string(cmd) == "export") args.push_back("--format=json");
            EXPECT_EQ(invoke(args).out, invoke(args).out) << cmd << " " << name;
        }
    }
}

}  // namespace
}  // namespace eg::cli
