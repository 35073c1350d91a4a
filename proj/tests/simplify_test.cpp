#include <gtest/gtest.h>

#include "battery.hpp"
#include "eg/completion.hpp"
#include "eg/equivalence.hpp"
#include "eg/evaluate.hpp"
#include "eg/random.hpp"
#include "eg/simplify.hpp"

namespace eg {
namespace {

Formula F(const std::string& text) { return parse_formula(text); }

bool alpha(const Formula& actual, const std::string& expected) {
    return alpha_equivalent(actual, parse_formula(expected));
}

TEST(Simplify, Examples) {
    EXPECT_TRUE(alpha(simplify(F("exists Y (Y in X & p(Y))")).formula, "p(X)"));
    EXPECT_TRUE(alpha(simplify(F("forall V (p(V) <-> V in 1..8 & p(V))")).formula, "forall V (p(V) -> V in 1..8)"));
    EXPECT_TRUE(alpha(simplify(F("forall X (not (X in 1..4 & not covered(X)))")).formula,
                      "forall X (X in 1..4 -> covered(X))"));
    EXPECT_TRUE(alpha(simplify(F("forall V1 V2 (queen(V1,V2) <-> exists X Y (V1 = X & V2 = Y & col(X) & row(Y) & "
                                 "queen(V1,V2)))"))
                          .formula,
                      "forall V1 V2 (queen(V1,V2) -> col(V1) & row(V2))"));
}

TEST(Simplify, BooleanLaws) {
    EXPECT_EQ(simplify(F("p & #true")).formula, F("p"));
    EXPECT_EQ(simplify(F("p | #true")).formula, Formula::top());
    EXPECT_EQ(simplify(F("not not p")).formula, F("p"));
    EXPECT_EQ(simplify(F("exists X (p)")).formula, F("p"));
    EXPECT_EQ(simplify(F("p & p")).formula, F("p"));
}

TEST(Simplify, TraceRecordsSteps) {
    SimplifyOptions options;
    options.record_trace = true;
    const SimplifyResult r = simplify(F("exists Y (Y in X & p(Y))"), options);
    ASSERT_FALSE(r.trace.empty());
    for (const auto& step : r.trace) {
        EXPECT_FALSE(step.rule.empty());
        EXPECT_NE(step.before, step.after);
    }
    EXPECT_EQ(to_string(r.trace).substr(0, 3), "1. ");
    EXPECT_FALSE(r.capped);
}

TEST(Integerize, Examples) {
    const IntegerizeResult fact = integerize(completion(test::load_corpus("fact")));
    ASSERT_EQ(fact.facts.size(), 1u);
    EXPECT_TRUE(alpha(fact.facts[0].formula, "forall X (p(X) -> exists V (V in X+1))"));
    EXPECT_TRUE(alpha(fact.definitions[0].formula, "forall N (p(N) <-> 1 <= N & N <= 8)"));

    const IntegerizeResult rule5 = integerize(completion(test::load_corpus("rule5")));
    EXPECT_TRUE(alpha(rule5.definitions[1].formula, "forall N (q(N) <-> p(N-1) & 2 <= N & N <= 9)"));

    const IntegerizeResult schur = integerize(completion(test::load_corpus("schur_2_4")));
    EXPECT_TRUE(alpha(schur.constraints.back(), "forall I J S (in(I,S) & in(J,S) -> not in(I+J,S))"));
    EXPECT_TRUE(alpha(schur.constraints.front(), "forall I (1 <= I & I <= 4 -> covered(I))"));
}

TEST(Integerize, PassesThroughWithoutIntegers) {
    const CompletionResult c = simplify(completion(test::load_corpus("union")));
    const IntegerizeResult r = integerize(completion(test::load_corpus("union")));
    EXPECT_TRUE(r.facts.empty());
    ASSERT_EQ(r.definitions.size(), c.definitions.size());
    for (std::size_t i = 0; i < c.definitions.size(); ++i) EXPECT_EQ(r.definitions[i].formula, c.definitions[i].formula);
}

TEST(Properties, IdempotentOnCorpus) {
    for (const auto& name : test::corpus_names()) {
        for (const auto& f : completion(test::load_corpus(name)).formulas()) {
            const Formula once = simplify(f).formula;
            EXPECT_EQ(simplify(once).formula, once) << name << ": " << to_string(f);
        }
    }
}

TEST(Properties, SoundOnRandomFormulas) {
    const test::SimplifierBattery b = test::simplifier_battery(101, 300);
    EXPECT_EQ(b.triples, 300u);
    EXPECT_EQ(b.disagreements, 0u);
    EXPECT_EQ(b.approximated_disagreements, 0u);
    for (const auto& f : b.failures) ADD_FAILURE() << f;
}

Interpretation random_extent(Rng& rng, const std::vector<PredicateSymbol>& preds) {
    const ValueSet values{Value::numeral(0), Value::numeral(1), Value::numeral(2), Value::numeral(3),
                          Value::numeral(5), Value::numeral(9), Value::symbol("a")};
    Interpretation out;
    for (const auto& p : preds) {
        const int n = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int k = 0; k < n; ++k) {
            GroundAtom a{p.name, {}};
            for (std::size_t i = 0; i < p.arity; ++i) {
                a.args.push_back(values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)]);
            }
            out.insert(a);
        }
    }
    return out;
}

// The integer form together with its side conditions has the models of the original completion.
TEST(Properties, IntegerizeSoundWithSideConditions) {
    Rng rng(41);
    for (const auto& name : {"fact", "rule5", "schur_2_4", "queens4", "choice"}) {
        const CompletionResult c = completion(test::load_corpus(name));
        const Formula original = Formula::conjunction(c.formulas());
        const Formula rewritten = Formula::conjunction(integerize(c).formulas());
        std::size_t compared = 0;
        for (int k = 0; k < 300; ++k) {
            const Interpretation i = random_extent(rng, c.vocabulary);
            const EvalDomain d = default_domain({original, rewritten}, i, -1, 12);
            const SatResult a = satisfies(original, i, d);
            const SatResult b = satisfies(rewritten, i, d);
            if (a.approximated || b.approximated) continue;
            ++compared;
            EXPECT_EQ(a.value, b.value) << name << " under " << to_string(i);
        }
        EXPECT_GT(compared, 100u) << name;
    }
}

}  // namespace
}  // namespace eg
