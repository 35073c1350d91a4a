#include <gtest/gtest.h>

#include "eg/equivalence.hpp"
#include "eg/evaluate.hpp"
#include "eg/formula.hpp"
#include "eg/random.hpp"

namespace eg {
namespace {

Formula F(const std::string& text) { return parse_formula(text); }

Interpretation atoms(const std::string& text) {
    Interpretation out;
    for (const auto& r : parse_program(text).rules) {
        GroundAtom a{r.head.predicate, {}};
        for (const auto& t : r.head.args) a.args.push_back(*to_value(t));
        out.insert(a);
    }
    return out;
}

EvalDomain domain_for(const Formula& f, const Interpretation& i) { return default_domain({f}, i, -2, 10); }

bool holds(const std::string& text, const Interpretation& i) {
    const Formula f = F(text);
    return satisfies(f, i, domain_for(f, i)).value;
}

std::vector<std::string> names(const std::vector<Variable>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.name);
    return out;
}

TEST(FreeVariables, Examples) {
    EXPECT_EQ(names(free_variables(F("#sum{X : exists Y (p(X,Y,Z))} = 0"))), std::vector<std::string>{"Z"});
    EXPECT_TRUE(free_variables(Formula::bottom()).empty());
    EXPECT_EQ(names(free_variables(F("forall X (p(X) -> q(X,W))"))), std::vector<std::string>{"W"});
}

TEST(Substitute, Examples) {
    EXPECT_EQ(substitute(F("p(X) & forall X (q(X))"), "X", Value::numeral(3)), F("p(3) & forall X (q(X))"));
    EXPECT_EQ(substitute(F("#sum{X : p(X,Z)} = Z"), "Z", Value::symbol("abc")), F("#sum{X : p(X,abc)} = abc"));
    EXPECT_EQ(substitute(F("X in 1..8"), "X", Value::numeral(3)), F("3 in 1..8"));
}

TEST(EvalArgument, Aggregates) {
    const Interpretation q = atoms("queen(1,1).");
    const Formula count = F("#count{Z1,Z2 : queen(Z1,Z2)} = 0");
    EXPECT_EQ(eval_argument(count.lhs(), q, domain_for(count, q)), Value::numeral(1));
    const Formula empty = F("#sum{X : #false} = 0");
    EXPECT_EQ(eval_argument(empty.lhs(), {}, domain_for(empty, {})), Value::numeral(0));
    const Interpretation t = atoms("t(abc,5). t(3,foo).");
    const Formula sum = F("#sum{X,Y : t(X,Y)} = 0");
    EXPECT_EQ(eval_argument(sum.lhs(), t, domain_for(sum, t)), Value::numeral(3));
}

TEST(Satisfies, Examples) {
    EXPECT_TRUE(holds("exists X (p(X) & X in 1..8)", atoms("p(2). p(3). p(4).")));
    EXPECT_FALSE(holds("#false", atoms("p(1).")));
    EXPECT_TRUE(holds("forall V (p(V) -> V in 1..8)", {}));
    EXPECT_FALSE(holds("forall V (p(V) -> V in 1..8)", atoms("p(9).")));
}

TEST(Satisfies, ApproximationFlag) {
    const Formula guarded = F("forall X (p(X) -> q(X))");
    EXPECT_FALSE(satisfies(guarded, {}, domain_for(guarded, {})).approximated);
    const Formula unguarded = F("exists X (not p(X))");
    EXPECT_TRUE(satisfies(unguarded, {}, domain_for(unguarded, {})).approximated);
}

TEST(Render, Utf8) {
    EXPECT_EQ(to_string(F("forall X (p(X) -> not q(X) & X != 1)"), {true}), "∀X (p(X) → ¬q(X) ∧ X ≠ 1)");
    EXPECT_EQ(F(to_string(F("forall X (p(X) -> not q(X) & X != 1)"), {true})), F("forall X (p(X) -> not q(X) & X != 1)"));
}

const std::vector<std::string> kArguments{"0", "2", "3", "a", "f(1)", "#count{X : p(X)}", "#sum{X : q(X,1)}",
                                          "#count{X : q(X,X) & not r}"};
const std::vector<std::string> kTerms{"1..3", "2+1", "(1..2)*2", "a", "abc+1", "f(1..2)", "0..(1..2)", "3/0"};

TEST(ParseFormula, AggregateArguments) {
    const Formula atom = F("p(f(#count{X : q(X)}),1)");
    ASSERT_EQ(atom.kind, Formula::Kind::Atom);
    EXPECT_EQ(atom.args[0].args[0].kind, Argument::Kind::Aggregate);
    EXPECT_EQ(F("#sum{X : q(X)} in 1..3").kind, Formula::Kind::Member);
    EXPECT_EQ(F("1 < #count{X : q(X)}").args[1].kind, Argument::Kind::Aggregate);
    EXPECT_THROW(F("1 in #count{X : q(X)}"), ParseError);
    EXPECT_THROW(F("#count{X : q(X)}"), ParseError);
    EXPECT_THROW(F("p(#count{X : q(X)}..2)"), ParseError);
}

TEST(Properties, MembershipIsDisjunctionOfEqualities) {
    Rng rng(11);
    for (int round = 0; round < 60; ++round) {
        const Interpretation i = random_interpretation(rng);
        const EvalDomain d = random_domain(rng);
        for (const auto& arg : kArguments) {
            for (const auto& term : kTerms) {
                const Formula member = F(arg + " in " + term);
                std::vector<Formula> equalities;
                for (const auto& r : eval_term(member.term)) {
                    equalities.push_back(Formula::compare(member.lhs(), Relation::Eq, Argument::from_value(r)));
                }
                EXPECT_EQ(satisfies(member, i, d).value, satisfies(Formula::disjunction(equalities), i, d).value)
                    << to_string(member);
            }
            for (const auto& other : kArguments) {
                const Formula equality = F(arg + " = " + other);
                if (equality.rhs().contains_aggregate()) continue;
                const Formula member = Formula::member(equality.lhs(), *to_term(equality.rhs()));
                EXPECT_EQ(satisfies(member, i, d).value, satisfies(equality, i, d).value) << to_string(member);
            }
        }
    }
}

TEST(Properties, SubstitutionOrderIrrelevant) {
    Rng rng(5);
    const std::vector<Formula> open{F("p(X) & q(X,Y)"), F("#count{Z : q(Z,X)} = Y | r"), F("X in Y..2 -> p(Y)"),
                                    F("exists Z (q(X,Z) & Z != Y)")};
    const std::vector<Value> values{Value::numeral(0), Value::numeral(2), Value::symbol("a")};
    for (int round = 0; round < 40; ++round) {
        const Interpretation i = random_interpretation(rng);
        const EvalDomain d = random_domain(rng);
        for (const auto& f : open) {
            for (const auto& x : values) {
                for (const auto& y : values) {
                    const Formula xy = substitute(substitute(f, "X", x), "Y", y);
                    const Formula yx = substitute(substitute(f, "Y", y), "X", x);
                    EXPECT_EQ(satisfies(xy, i, d).value, satisfies(yx, i, d).value);
                }
            }
        }
    }
}

TEST(Properties, DomainGrowthKeepsExactResults) {
    Rng rng(9);
    for (int round = 0; round < 400; ++round) {
        const Formula f = random_formula(rng);
        const Interpretation i = random_interpretation(rng);
        EvalDomain small = random_domain(rng);
        const SatResult a = satisfies(f, i, small);
        if (a.approximated) continue;
        EvalDomain large = small;
        large.general.push_back(Value::symbol("zz"));
        large.general.push_back(Value::function("g", {Value::numeral(1)}));
        large.int_lo -= 2;
        large.int_hi += 2;
        large.complete();
        EXPECT_EQ(satisfies(f, i, large).value, a.value) << to_string(f);
    }
}

TEST(Properties, PrintParseRoundTrip) {
    Rng rng(13);
    for (int round = 0; round < 500; ++round) {
        const Formula f = random_formula(rng);
        const Formula back = parse_formula(to_string(f));
        EXPECT_TRUE(alpha_equivalent(back, f, {false, false, false})) << to_string(f);
        EXPECT_TRUE(alpha_equivalent(parse_formula(to_string(f, {true})), f, {false, false, false}))
            << to_string(f, {true});
    }
}

}  // namespace
}  // namespace eg
