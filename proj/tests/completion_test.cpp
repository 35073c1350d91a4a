#include <gtest/gtest.h>

#include "battery.hpp"
#include "eg/completion.hpp"
#include "eg/equivalence.hpp"
#include "eg/evaluate.hpp"
#include "eg/random.hpp"
#include "eg/simplify.hpp"

namespace eg {
namespace {

bool alpha(const Formula& actual, const std::string& expected) {
    return alpha_equivalent(actual, parse_formula(expected));
}

TEST(DefinitionsOf, Schur) {
    const Program p = test::load_corpus("schur_2_4");
    EXPECT_EQ(definitions_of({"covered", 1}, p), std::vector<Rule>{p.rules[1]});
    EXPECT_EQ(definitions_of({"in", 2}, p), std::vector<Rule>{p.rules[0]});
    EXPECT_TRUE(definitions_of({"absent", 1}, p).empty());
    EXPECT_TRUE(definitions_of({"covered", 2}, p).empty());
}

TEST(CompletedDefinition, Examples) {
    EXPECT_TRUE(alpha(completed_definition({"p", 1}, test::load_corpus("fact")), "forall V (p(V) <-> V in 1..8)"));
    EXPECT_TRUE(alpha(completed_definition({"p", 1}, test::load_corpus("choice")),
                      "forall V (p(V) <-> V in 1..8 & p(V))"));
    const Formula q = completed_definition({"q", 1}, test::load_corpus("rule5"));
    EXPECT_TRUE(alpha(q, "forall V (q(V) <-> exists X (V in X+1 & exists Y (Y in X & p(Y)) & "
                         "exists X1 X2 (X1 in X & X2 in 1..8 & X1 = X2)))"));
    EXPECT_TRUE(alpha(simplify(q).formula, "forall V (q(V) <-> exists X (V in X+1 & p(X) & X in 1..8))"));
    const Formula r = completed_definition({"r", 1}, test::load_corpus("union"));
    EXPECT_TRUE(alpha(simplify(r).formula, "forall X (r(X) <-> p(X) | q(X))"));
    EXPECT_TRUE(alpha(completed_definition({"s", 2}, test::load_corpus("union")), "forall V1 V2 (s(V1,V2) <-> #false)"));
}

TEST(Completion, Shape) {
    EXPECT_TRUE(completion(Program{}).formulas().empty());
    const CompletionResult c = completion(test::load_corpus("queens8"));
    ASSERT_EQ(c.definitions.size(), 3u);
    EXPECT_EQ(c.definitions[0].predicate, (PredicateSymbol{"col", 1}));
    EXPECT_EQ(c.definitions[1].predicate, (PredicateSymbol{"queen", 2}));
    EXPECT_EQ(c.definitions[2].predicate, (PredicateSymbol{"row", 1}));
    EXPECT_EQ(c.constraints.size(), 4u);
    for (const auto& f : c.formulas()) EXPECT_TRUE(free_variables(f).empty()) << to_string(f);
}

TEST(Completion, BodyOnlyPredicatesAreEmpty) {
    const Program p = parse_program("a :- b, not c. :- d(X), e(X).");
    const CompletionResult c = completion(p);
    ASSERT_EQ(c.definitions.size(), 5u);
    for (const auto& d : c.definitions) {
        if (d.predicate.name == "a") continue;
        EXPECT_TRUE(alpha(simplify(d.formula).formula, "forall V (" + d.predicate.name + "(V) <-> #false)") ||
                    alpha(simplify(d.formula).formula, d.predicate.name + " <-> #false"))
            << to_string(d.formula);
    }
}

TEST(Properties, EmptyDefinitionsForceEmptyExtent) {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const Program p = random_program(rng).program;
        const CompletionResult c = completion(p);
        for (const auto& d : c.definitions) {
            if (!definitions_of(d.predicate, p).empty()) continue;
            Interpretation only;
            GroundAtom a{d.predicate.name, std::vector<Value>(d.predicate.arity, Value::numeral(1))};
            only.insert(a);
            const EvalDomain dom = default_domain({d.formula}, only, 0, 2);
            EXPECT_FALSE(satisfies(d.formula, only, dom).value) << to_string(d.formula);
            EXPECT_TRUE(satisfies(d.formula, {}, dom).value);
        }
    }
}

TEST(Properties, EquivalentAntecedentsGiveEquivalentDefinitions) {
    Rng rng(29);
    std::size_t compared = 0;
    for (int i = 0; i < 200; ++i) {
        const Program p = random_program(rng).program;
        for (const auto& d : completion(p).definitions) {
            const Formula simplified = simplify(d.formula).formula;
            for (int k = 0; k < 3; ++k) {
                const Interpretation interp = random_interpretation(rng);
                const EvalDomain dom = random_domain(rng);
                const SatResult a = satisfies(d.formula, interp, dom);
                const SatResult b = satisfies(simplified, interp, dom);
                if (a.approximated || b.approximated) continue;
                EXPECT_EQ(a.value, b.value) << to_string(d.formula);
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 200u);
}

}  // namespace
}  // namespace eg
