#include <gtest/gtest.h>

#include "eg/equivalence.hpp"
#include "eg/evaluate.hpp"
#include "eg/random.hpp"
#include "eg/simplify.hpp"
#include "eg/translate.hpp"

namespace eg {
namespace {

Rule rule(const std::string& text) { return parse_program(text).rules.at(0); }

const BodyElement& first(const Rule& r) { return r.body.at(0); }

bool alpha(const Formula& actual, const std::string& expected) {
    return alpha_equivalent(actual, parse_formula(expected));
}

TEST(PhiLiteral, Examples) {
    NameSupply names({"X"});
    const Rule r = rule("t :- p(X), p(1..X), p, not q(X).");
    EXPECT_TRUE(alpha(phi_literal(std::get<Literal>(r.body[0]), names), "exists Y (Y in X & p(Y))"));
    EXPECT_TRUE(alpha(phi_literal(std::get<Literal>(r.body[1]), names), "exists Y (Y in 1..X & p(Y))"));
    EXPECT_EQ(phi_literal(std::get<Literal>(r.body[2]), names), Formula::atom("p"));
    EXPECT_TRUE(alpha(phi_literal(std::get<Literal>(r.body[3]), names), "exists Y (Y in X & not q(Y))"));
}

TEST(PhiComparison, Examples) {
    NameSupply names({"X", "Y"});
    EXPECT_TRUE(alpha(phi_comparison(std::get<Comparison>(first(rule("t :- X = 1..8."))), names),
                      "exists X1 X2 (X1 in X & X2 in 1..8 & X1 = X2)"));
    EXPECT_TRUE(alpha(phi_comparison(std::get<Comparison>(first(rule("t :- 1 < 2."))), names),
                      "exists X1 X2 (X1 in 1 & X2 in 2 & X1 < X2)"));
}

TEST(PhiComparison, IntervalsIntersect) {
    NameSupply names({"X", "Y"});
    const Formula f = phi_comparison(std::get<Comparison>(first(rule("t :- X..X+1 = Y..Y+1."))), names);
    for (int x = 0; x <= 4; ++x) {
        for (int y = 0; y <= 4; ++y) {
            const Formula g = substitute(substitute(f, "X", Value::numeral(x)), "Y", Value::numeral(y));
            const EvalDomain d = default_domain({g}, {}, -1, 6);
            EXPECT_EQ(satisfies(g, {}, d).value, std::abs(x - y) <= 1) << x << " " << y;
        }
    }
}

TEST(PhiAggregate, Examples) {
    NameSupply names({"X", "W"});
    const Formula sum = phi_aggregate(std::get<Aggregate>(first(rule("q(W) :- #sum{X*X : p(X)} = W."))), {"X"}, names);
    EXPECT_TRUE(alpha(sum, "exists Y (#sum{Z : exists X (Z in X*X & exists Y1 (Y1 in X & p(Y1)))} = Y & Y in W)"));
    EXPECT_TRUE(alpha(simplify(sum).formula, "#sum{Z : exists X (Z in X*X & p(X))} = W"));

    NameSupply none;
    const Formula count = phi_aggregate(std::get<Aggregate>(first(rule(":- #count{1} >= 0."))), {}, none);
    EXPECT_TRUE(alpha(count, "exists Y (#count{Z : Z in 1} >= Y & Y in 0)"));

    NameSupply queens({"X", "Y"});
    const Formula q = phi_aggregate(std::get<Aggregate>(first(rule(":- #count{X,Y : queen(X,Y)} != 8."))),
                                    {"X", "Y"}, queens);
    EXPECT_TRUE(alpha(simplify(q).formula, "#count{Z1,Z2 : queen(Z1,Z2)} != 8"));
    EXPECT_TRUE(alpha(q, "exists Y1 (#count{Z1,Z2 : exists X Y (Z1 in X & Z2 in Y & exists U1 U2 (U1 in X & U2 in Y & "
                         "queen(U1,U2)))} != Y1 & Y1 in 8)"));
}

TEST(RepresentRule, Examples) {
    const RuleRepresentation basic = represent_rule(rule("q(X+1) :- p(X), X = 1..8."));
    EXPECT_EQ(basic.kind, Rule::Kind::Basic);
    EXPECT_EQ(basic.head, (PredicateSymbol{"q", 1}));
    EXPECT_TRUE(alpha(simplify(basic.antecedent).formula, "V in X+1 & p(X) & X in 1..8"));
    EXPECT_TRUE(alpha(basic.formula, to_string(basic.antecedent) + " -> q(V)"));

    const RuleRepresentation choice = represent_rule(rule("{p(1..8)}."));
    EXPECT_TRUE(alpha(simplify(choice.antecedent).formula, "V in 1..8 & p(V)"));
    EXPECT_TRUE(alpha(choice.formula, to_string(choice.antecedent) + " -> p(V)"));

    const RuleRepresentation constraint = represent_rule(rule(":- ."));
    EXPECT_EQ(simplify(constraint.formula).formula, Formula::bottom());
}

TEST(Properties, ChoiceRepresentationsAreValid) {
    Rng rng(17);
    std::size_t checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng).program;
        for (const auto& r : p.rules) {
            if (r.kind != Rule::Kind::Choice) continue;
            const Formula closed = universal_closure(represent_rule(r).formula);
            for (int k = 0; k < 3; ++k) {
                const SatResult s = satisfies(closed, random_interpretation(rng), random_domain(rng));
                EXPECT_TRUE(s.value) << to_string(r);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Properties, DeterministicAndHygienic) {
    Rng rng(19);
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng).program;
        for (const auto& r : p.rules) {
            const RuleRepresentation a = represent_rule(r);
            EXPECT_EQ(a.formula, represent_rule(r).formula);
            // phi introduces only bound variables: the free ones are rule variables or head variables.
            for (const auto& v : free_variables(a.formula)) {
                const auto vars = variables(r);
                const bool from_rule = std::find(vars.begin(), vars.end(), v.name) != vars.end();
                const bool from_head = std::find(a.head_vars.begin(), a.head_vars.end(), v) != a.head_vars.end();
                EXPECT_TRUE(from_rule || from_head) << v.name << " in " << to_string(a.formula);
            }
            const bool aggregate_free = std::none_of(r.body.begin(), r.body.end(), [](const BodyElement& e) {
                return std::holds_alternative<Aggregate>(e);
            });
            if (aggregate_free) {
                NameSupply n1(variables(r)), n2(variables(r));
                EXPECT_EQ(phi_body(r.body, {}, n1), phi_body(r.body, classify_variables(r).locals, n2));
            }
        }
    }
}

}  // namespace
}  // namespace eg
