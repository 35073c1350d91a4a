#include <gtest/gtest.h>

#include "battery.hpp"
#include "eg/random.hpp"
#include "eg/tightness.hpp"

namespace eg {
namespace {

const PredicateSymbol kCovered{"covered", 1};
const PredicateSymbol kIn{"in", 2};

TEST(DependencyGraph, Examples) {
    const DependencyGraph schur = dependency_graph(test::load_corpus("schur_2_4"));
    ASSERT_EQ(schur.edges.size(), 1u);
    EXPECT_EQ(schur.edges[0].from, kCovered);
    EXPECT_EQ(schur.edges[0].to, kIn);
    EXPECT_EQ(schur.edges[0].rule, 1u);
    EXPECT_EQ(schur.vertices, (std::vector<PredicateSymbol>{kCovered, kIn}));

    const DependencyGraph g24 = dependency_graph(test::load_corpus("rule24"));
    EXPECT_TRUE(g24.has_edge({"q", 1}, {"p", 1}));
    // Without the aggregate clause the rule has no positive body literal.
    EXPECT_TRUE(dependency_graph(test::load_corpus("rule24"), EdgeRule::Positive).edges.empty());

    EXPECT_TRUE(dependency_graph(parse_program("p :- not p.")).edges.empty());
}

TEST(Tightness, Examples) {
    EXPECT_TRUE(is_tight(test::load_corpus("schur_2_4")).tight);
    EXPECT_TRUE(is_tight(test::load_corpus("queens8")).tight);
    const TightnessVerdict loop = is_tight(test::load_corpus("p_if_p"));
    EXPECT_FALSE(loop.tight);
    EXPECT_EQ(loop.cycle, (std::vector<PredicateSymbol>{PredicateSymbol{"p", 0}}));
    const TightnessVerdict two = is_tight(parse_program("b :- a. a :- c. c :- b. d :- d."));
    EXPECT_FALSE(two.tight);
    EXPECT_EQ(two.cycle, (std::vector<PredicateSymbol>{{"a", 0}, {"c", 0}, {"b", 0}}));
}

TEST(Dot, Rendering) {
    EXPECT_EQ(to_dot(dependency_graph(test::load_corpus("schur_2_4"))),
              "digraph dependencies {\n  \"covered/1\";\n  \"in/2\";\n  \"covered/1\" -> \"in/2\" [label=\"rule 2\"];\n}\n");
}

TEST(Properties, RemovingRulesNeverAddsEdges) {
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng).program;
        const DependencyGraph full = dependency_graph(p);
        for (std::size_t k = 0; k < p.rules.size(); ++k) {
            Program fewer = p;
            fewer.rules.erase(fewer.rules.begin() + static_cast<std::ptrdiff_t>(k));
            for (const auto& e : dependency_graph(fewer).edges) EXPECT_TRUE(full.has_edge(e.from, e.to));
        }
    }
}

TEST(Properties, AggregateFreeGraphsAgree) {
    Rng rng(37);
    RandomProgramOptions options;
    options.aggregate_rate = 0;
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng, options).program;
        EXPECT_EQ(dependency_graph(p, EdgeRule::Positive).edges, dependency_graph(p).edges);
    }
    for (const auto& name : test::corpus_names()) {
        if (name == "rule24" || name.starts_with("queens")) continue;
        const Program p = test::load_corpus(name);
        EXPECT_EQ(dependency_graph(p, EdgeRule::Positive).edges, dependency_graph(p).edges) << name;
    }
}

}  // namespace
}  // namespace eg
