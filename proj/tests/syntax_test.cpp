#include <gtest/gtest.h>

#include <algorithm>

#include "battery.hpp"
#include "eg/random.hpp"
#include "eg/syntax.hpp"

namespace eg {
namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

TEST(Parser, UnionProgram) {
    const Program p = parse_program("r(X) :- p(X).  r(X) :- q(X).");
    ASSERT_EQ(p.rules.size(), 2u);
    for (const auto& r : p.rules) {
        EXPECT_EQ(r.kind, Rule::Kind::Basic);
        EXPECT_EQ(predicate_of(r.head), (PredicateSymbol{"r", 1}));
        ASSERT_EQ(r.body.size(), 1u);
    }
    EXPECT_EQ(std::get<Literal>(p.rules[1].body[0]).atom.predicate, "q");
}

TEST(Parser, EmptyInput) {
    EXPECT_TRUE(parse_program("").rules.empty());
    EXPECT_TRUE(parse_program("% only a comment\n").rules.empty());
}

TEST(Parser, CountConstraint) {
    const Program p = parse_program(":- #count{X,Y : queen(X,Y)} != 8.");
    ASSERT_EQ(p.rules.size(), 1u);
    const Rule& r = p.rules[0];
    EXPECT_EQ(r.kind, Rule::Kind::Constraint);
    ASSERT_EQ(r.body.size(), 1u);
    const auto& agg = std::get<Aggregate>(r.body[0]);
    EXPECT_EQ(agg.function, AggregateFunction::Count);
    EXPECT_EQ(agg.tuple, (std::vector<Term>{Term::variable("X"), Term::variable("Y")}));
    ASSERT_EQ(agg.condition.size(), 1u);
    EXPECT_EQ(std::get<Literal>(agg.condition[0]).atom,
              (Atom{"queen", {Term::variable("X"), Term::variable("Y")}}));
    EXPECT_EQ(agg.rel, Relation::Ne);
    EXPECT_EQ(agg.bound, Term::numeral(8));
}

TEST(Parser, ChoiceAndOperations) {
    const Program p = parse_program("{in(1..4, 1..2)}. q(X+1) :- p(X), X = 1..8. t :- |X-Y| = 2 ** 3, p(X), p(Y).");
    ASSERT_EQ(p.rules.size(), 3u);
    EXPECT_EQ(p.rules[0].kind, Rule::Kind::Choice);
    EXPECT_EQ(p.rules[0].head.args[0], Term::interval(Term::numeral(1), Term::numeral(4)));
    EXPECT_EQ(p.rules[1].head.args[0], Term::operation(Operator::Plus, {Term::variable("X"), Term::numeral(1)}));
    const auto& cmp = std::get<Comparison>(p.rules[2].body[0]);
    EXPECT_EQ(cmp.lhs.op, Operator::Absolute);
    EXPECT_EQ(cmp.rhs.op, Operator::Power);
}

TEST(Parser, ErrorsCarryPosition) {
    try {
        parse_program("p(X) :- q(X)\nr.");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_FALSE(e.expected().empty());
    }
    EXPECT_THROW(parse_program(":- #count{X : p(X)} = X+1."), ParseError);
    EXPECT_THROW(parse_program("p(1"), ParseError);
}

TEST(Classify, SumRule) {
    const Rule r = parse_program("q(W) :- #sum{X*X : p(X)} = W.").rules[0];
    const VariableClassification c = classify_variables(r);
    EXPECT_EQ(c.locals, std::vector<std::string>{"X"});
    EXPECT_EQ(c.globals, std::vector<std::string>{"W"});
}

TEST(Classify, NoVariables) {
    const VariableClassification c = classify_variables(parse_program("p.").rules[0]);
    EXPECT_TRUE(c.locals.empty());
    EXPECT_TRUE(c.globals.empty());
}

TEST(Classify, SchurConstraint) {
    const VariableClassification c = classify_variables(parse_program(":- in(X,S), in(Y,S), in(X+Y,S).").rules[0]);
    EXPECT_TRUE(c.locals.empty());
    EXPECT_EQ(sorted(c.globals), (std::vector<std::string>{"S", "X", "Y"}));
}

TEST(Printer, CanonicalForms) {
    EXPECT_EQ(print_program(parse_program("p(1..8).")), "p(1..8).\n");
    EXPECT_EQ(print_program(parse_program("{queen(X,Y)}:-col(X),row(Y).")), "{queen(X,Y)} :- col(X), row(Y).\n");
}

TEST(Printer, SchurRoundTrip) {
    const Program p = test::load_corpus("schur_2_4");
    EXPECT_EQ(parse_program(print_program(p)), p);
}

TEST(Properties, RandomRulesRoundTripAndPartition) {
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng).program;
        const std::string text = print_program(p);
        ASSERT_EQ(parse_program(text), p) << text;
        for (const auto& r : p.rules) {
            const VariableClassification c = classify_variables(r);
            std::vector<std::string> both = c.locals;
            both.insert(both.end(), c.globals.begin(), c.globals.end());
            EXPECT_EQ(sorted(both), sorted(variables(r))) << to_string(r);
            for (const auto& l : c.locals) {
                EXPECT_EQ(std::count(c.globals.begin(), c.globals.end(), l), 0);
            }
            const bool has_aggregate = std::any_of(r.body.begin(), r.body.end(), [](const BodyElement& e) {
                return std::holds_alternative<Aggregate>(e);
            });
            if (!has_aggregate) {
                EXPECT_TRUE(c.locals.empty());
            }
        }
    }
}

}  // namespace
}  // namespace eg
