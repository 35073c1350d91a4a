#include <gtest/gtest.h>

#include "battery.hpp"
#include "eg/completion.hpp"
#include "eg/evaluate.hpp"
#include "eg/ground.hpp"
#include "eg/oracle.hpp"
#include "eg/random.hpp"
#include "eg/simplify.hpp"

namespace eg {
namespace {

Rule rule(const std::string& text) { return parse_program(text).rules.at(0); }

GroundAtom atom(const std::string& pred, std::vector<std::int64_t> args = {}) {
    GroundAtom a{pred, {}};
    for (auto n : args) a.args.push_back(Value::numeral(n));
    return a;
}

std::string tau_text(const std::string& body, const Interpretation* universe = nullptr) {
    GroundingSetting setting{universe, nullptr, false};
    return to_string(tau_body(rule(":- " + body + ".").body, setting));
}

std::string tau_rule_text(const std::string& text) {
    GroundingSetting setting;
    return to_string(tau_rule(rule(text), setting));
}

std::vector<Interpretation> models_of(const std::string& text) {
    const Program p = parse_program(text);
    const ModelSet m = stable_models(p, default_config(p));
    EXPECT_FALSE(m.approximated);
    return m.models;
}

TEST(Instances, SafetyRestrictsToUniverse) {
    InstantiationConfig cfg;
    cfg.domain.general = {Value::numeral(1), Value::numeral(2)};
    const Interpretation universe{atom("in", {1, 1}), atom("in", {2, 1})};
    const InstanceSet set = instance_bindings(rule("covered(X) :- in(X,S)."), universe, cfg);
    EXPECT_EQ(set.bindings.size(), 2u);
    EXPECT_FALSE(set.unrestricted);
}

TEST(Instances, GroundRuleIsItsOwnInstance) {
    InstantiationConfig cfg;
    cfg.domain.general = {Value::numeral(1)};
    const Rule r = rule("p(1) :- not q.");
    EXPECT_EQ(instances(r, cfg), std::vector<Rule>{r});
}

TEST(Instances, AggregateLocalsStayBound) {
    InstantiationConfig cfg;
    cfg.domain.general = {Value::numeral(0), Value::numeral(1)};
    const Rule r = rule("q(W) :- #sum{X*X : p(X)} = W.");
    const std::vector<Rule> out = instances(r, cfg);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(to_string(out[0]), "q(0) :- #sum{X*X : p(X)} = 0.");
    EXPECT_EQ(to_string(out[1]), "q(1) :- #sum{X*X : p(X)} = 1.");
}

TEST(Instances, CapIsEnforced) {
    InstantiationConfig cfg;
    for (int n = 0; n < 20; ++n) cfg.domain.general.push_back(Value::numeral(n));
    cfg.max_instances = 50;
    EXPECT_THROW(instances(rule("p(X,Y) :- X = 0..19, Y = 0..19."), cfg), ResourceError);
}

TEST(Tau, Literals) {
    EXPECT_EQ(tau_text("p(1..2)"), "p(1) | p(2)");
    EXPECT_EQ(tau_text("not p(1..2)"), "not p(1) | not p(2)");
    const Interpretation universe{atom("p", {1})};
    EXPECT_EQ(tau_text("p(1..2)", &universe), "p(1) | #false");
}

TEST(Tau, Comparisons) {
    EXPECT_EQ(tau_text("1 < 2"), "#true");
    EXPECT_EQ(tau_text("2 < 1"), "#false");
    EXPECT_EQ(tau_text("abc+1 = abc+1"), "#false");
    EXPECT_EQ(tau_text("1..3 = 3..5"), "#true");
}

TEST(Tau, Rules) {
    EXPECT_EQ(tau_rule_text("p(1..2)."), "#true -> (p(1) & p(2))");
    EXPECT_EQ(tau_rule_text("{p(1..2)}."), "#true -> ((p(1) | not p(1)) & (p(2) | not p(2)))");
    EXPECT_EQ(tau_rule_text(":- 1 < 2."), "not #true");
}

TEST(Tau, AggregateExpansion) {
    const Interpretation universe{atom("p", {1}), atom("p", {2})};
    GroundingSetting setting{&universe, nullptr, false};
    const GroundFormula g = tau_body(rule(":- #count{X : p(X)} >= 1.").body, setting);
    ASSERT_EQ(g.kind, GroundFormula::Kind::Aggregate);
    EXPECT_EQ(g.aggregate->elements.size(), 2u);
    // Only the empty subset fails to justify: #true -> p(1) | p(2).
    EXPECT_EQ(to_string(expand_aggregate(*g.aggregate, 12)), "(#true -> (p(1) | p(2)))");
}

TEST(Reduct, Examples) {
    const GroundFormula p = GroundFormula::make_atom(atom("p"));
    const GroundFormula excluded = GroundFormula::disjunction({p, GroundFormula::negation(p)});
    EXPECT_EQ(to_string(reduct(excluded, {atom("p")})), "p | #false");
    EXPECT_EQ(to_string(reduct(GroundFormula::implies(p, p), {})), "not #false");
    GroundingSetting setting;
    const GroundFormula loop = tau_rule(rule("p :- p."), setting);
    const GroundFormula reduced = reduct(loop, {atom("p")});
    EXPECT_EQ(to_string(reduced), "p -> p");
    EXPECT_TRUE(satisfies(reduced, {}));
}

TEST(AggregateReduct, Examples) {
    const Interpretation universe{atom("p", {1})};
    GroundingSetting setting{&universe, nullptr, false};
    const GroundFormula g = tau_body(rule(":- #count{X : p(X)} >= 1.").body, setting);
    const Interpretation i{atom("p", {1})};
    ASSERT_TRUE(satisfies(g, i));
    EXPECT_TRUE(aggregate_reduct_holds(*g.aggregate, i, i));
    EXPECT_FALSE(aggregate_reduct_holds(*g.aggregate, i, {}));
}

TEST(AggregateReduct, AgreesWithExpansion) {
    const test::AggregateBattery b = test::aggregate_battery(202, 100);
    EXPECT_EQ(b.disagreements, 0u);
    EXPECT_GT(b.pairs, 1000u);
    for (const auto& f : b.failures) ADD_FAILURE() << f;
}

TEST(StableModels, Examples) {
    EXPECT_EQ(models_of(test::read_corpus("schur_1_1")),
              (std::vector<Interpretation>{Interpretation{atom("covered", {1}), atom("in", {1, 1})}}));
    EXPECT_TRUE(models_of(test::read_corpus("schur_1_2")).empty());
    EXPECT_EQ(models_of("p :- p."), std::vector<Interpretation>{Interpretation{}});
    EXPECT_EQ(models_of(test::read_corpus("queens4")).size(), 2u);
    EXPECT_EQ(models_of("p :- not q. q :- not p.").size(), 2u);
    EXPECT_TRUE(models_of("p :- not p.").empty());
    EXPECT_EQ(models_of(test::read_corpus("choice")).size(), 256u);
    EXPECT_EQ(models_of(test::read_corpus("rule24")), std::vector<Interpretation>{Interpretation{atom("q", {0})}});
    EXPECT_EQ(models_of("{p(1..3)}. q(W) :- #sum{X : p(X)} = W. :- not p(2). :- p(3)."),
              (std::vector<Interpretation>{{atom("p", {1}), atom("p", {2}), atom("q", {3})},
                                           {atom("p", {2}), atom("q", {2})}}));
}

TEST(StableModels, NonMonotoneAggregate) {
    // p(1) supported only through an aggregate that p(1) itself falsifies.
    EXPECT_EQ(models_of("p(1) :- #count{X : p(X)} = 0."), std::vector<Interpretation>{});
    EXPECT_EQ(models_of("p(1) :- #count{X : p(X)} >= 1."), std::vector<Interpretation>{Interpretation{}});
}

TEST(StableModels, GroundProgramText) {
    const Program p = parse_program("p(1..2). q :- p(1), not r.");
    const GroundProgram g = ground_program(p, default_config(p));
    EXPECT_EQ(g.universe, (Interpretation{atom("p", {1}), atom("p", {2}), atom("q")}));
    EXPECT_FALSE(g.approximated);
    EXPECT_TRUE(is_stable(g, {atom("p", {1}), atom("p", {2}), atom("q")}));
    EXPECT_FALSE(is_stable(g, {atom("p", {1}), atom("p", {2})}));
    EXPECT_FALSE(to_string(g).empty());
}

TEST(StableModels, VocabularyCap) {
    const Program p = parse_program("{p(1..40)}.");
    InstantiationConfig cfg = default_config(p);
    cfg.max_vocabulary_atoms = 24;
    EXPECT_THROW(stable_models(p, cfg), ResourceError);
}

TEST(Verify, Examples) {
    const Program schur = test::load_corpus("schur_1_1");
    const TheoremReport a = verify_theorems(schur, default_config(schur));
    EXPECT_TRUE(a.theorem1);
    EXPECT_TRUE(a.tightness.tight);
    EXPECT_TRUE(a.theorem2);
    EXPECT_FALSE(a.approximated);

    const Program loop = test::load_corpus("p_if_p");
    const TheoremReport b = verify_theorems(loop, default_config(loop));
    EXPECT_TRUE(b.theorem1);
    EXPECT_FALSE(b.tightness.tight);
    EXPECT_EQ(b.completion, (std::vector<Interpretation>{{}, {atom("p")}}));
    EXPECT_EQ(b.stable, std::vector<Interpretation>{Interpretation{}});
    EXPECT_EQ(b.not_stable, std::vector<Interpretation>{Interpretation{atom("p")}});
    EXPECT_TRUE(b.ok());

    const TheoremReport c = verify_theorems(Program{}, default_config(Program{}));
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.stable, std::vector<Interpretation>{Interpretation{}});
    EXPECT_EQ(c.completion, std::vector<Interpretation>{Interpretation{}});
}

TEST(Properties, ConstraintsNeverAddModels) {
    Rng rng(43);
    std::size_t compared = 0;
    for (int i = 0; i < 150; ++i) {
        const RandomProgram base = random_program(rng);
        const RandomProgram extra = random_program(rng);
        Program combined = base.program;
        for (const auto& r : extra.program.rules) {
            if (r.kind == Rule::Kind::Constraint) combined.rules.push_back(r);
        }
        if (combined.rules.size() == base.program.rules.size()) continue;
        RandomProgram both{combined, base.constants, 0};
        both.constants.insert(both.constants.end(), extra.constants.begin(), extra.constants.end());
        normalize(both.constants);
        const InstantiationConfig cfg = random_program_config(both);
        try {
            const ModelSet before = stable_models(base.program, cfg);
            const ModelSet after = stable_models(combined, cfg);
            for (const auto& m : after.models) {
                EXPECT_TRUE(std::find(before.models.begin(), before.models.end(), m) != before.models.end())
                    << print_program(combined);
            }
            ++compared;
        } catch (const ResourceError&) {
        }
    }
    EXPECT_GT(compared, 40u);
}

// Model sets of the raw and simplified completions agree on every subset of the candidate atoms.
void expect_same_models(const Program& p, const InstantiationConfig& cfg, const std::string& label) {
    const CompletionResult raw = completion(p);
    const Formula a = Formula::conjunction(raw.formulas());
    const Formula b = Formula::conjunction(simplify(raw).formulas());
    const CompletionSearch search = completion_models(p, cfg);
    const std::vector<GroundAtom> atoms(search.universe.begin(), search.universe.end());
    ASSERT_LE(atoms.size(), 14u) << label;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
        Interpretation i;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            if (mask >> k & 1) i.insert(atoms[k]);
        }
        const SatResult x = satisfies(a, i, search.domain);
        const SatResult y = satisfies(b, i, search.domain);
        EXPECT_EQ(x.value, y.value) << label << " under " << to_string(i);
        const bool listed =
            std::find(search.result.models.begin(), search.result.models.end(), i) != search.result.models.end();
        if (!x.approximated) {
            EXPECT_EQ(x.value, listed) << label << " under " << to_string(i);
        }
    }
}

TEST(Properties, SimplifiedCompletionHasSameModels) {
    for (const auto& name : {"union", "fact", "choice", "rule5", "schur_1_1", "schur_1_2", "schur_2_4", "p_if_p", "rule24"}) {
        const Program p = test::load_corpus(name);
        expect_same_models(p, default_config(p), name);
    }
    Rng rng(47);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 60; ++i) {
        const RandomProgram rp = random_program(rng);
        InstantiationConfig cfg = random_program_config(rp);
        cfg.max_vocabulary_atoms = 10;
        try {
            if (completion_models(rp.program, cfg).universe.size() > 10) continue;
        } catch (const ResourceError&) {
            continue;
        }
        expect_same_models(rp.program, cfg, print_program(rp.program));
        ++checked;
    }
    EXPECT_GE(checked, 30);
}

}  // namespace
}  // namespace eg
