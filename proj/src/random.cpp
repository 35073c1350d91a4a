#include "eg/random.hpp"

#include <algorithm>

#include "eg/oracle.hpp"

namespace eg {
namespace {

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[below(rng, items.size())];
}

Relation random_relation(Rng& rng) {
    static const std::vector<Relation> all{Relation::Eq, Relation::Ne, Relation::Lt,
                                           Relation::Gt, Relation::Le, Relation::Ge};
    return pick(rng, all);
}

class ProgramBuilder {
public:
    ProgramBuilder(Rng& rng, const RandomProgramOptions& options) : rng_(rng), options_(options) {}

    RandomProgram build() {
        RandomProgram out;
        const std::size_t k = 1 + below(rng_, options_.max_constants);
        for (std::size_t i = 1; i <= k; ++i) constants_.push_back(Term::numeral(static_cast<std::int64_t>(i)));
        if (k > 1 && chance(rng_, 0.2)) constants_.back() = Term::symbol("a");
        for (const auto& c : constants_) out.constants.push_back(*to_value(c));
        normalize(out.constants);

        static const std::vector<std::string> names{"p", "q", "r"};
        const std::size_t n = 1 + below(rng_, options_.max_predicates);
        for (std::size_t i = 0; i < n; ++i) preds_.push_back({names[i], below(rng_, options_.max_arity + 1)});

        const std::size_t rules = 1 + below(rng_, options_.max_rules);
        for (std::size_t i = 0; i < rules; ++i) {
            const bool with_aggregate = chance(rng_, options_.aggregate_rate);
            out.program.rules.push_back(rule(with_aggregate));
            const auto& body = out.program.rules.back().body;
            if (std::any_of(body.begin(), body.end(),
                            [](const BodyElement& e) { return std::holds_alternative<Aggregate>(e); })) {
                ++out.aggregate_rules;
            }
        }
        return out;
    }

private:
    Term constant() { return pick(rng_, constants_); }

    // A bound variable or a constant.
    Term safe_term() {
        if (!bound_.empty() && chance(rng_, 0.7)) return Term::variable(pick(rng_, bound_));
        return constant();
    }

    Atom atom_over(const PredicateSymbol& p, bool binding) {
        static const std::vector<std::string> pool{"X", "Y", "Z"};
        Atom a{p.name, {}};
        for (std::size_t i = 0; i < p.arity; ++i) {
            if (binding && chance(rng_, 0.7)) {
                const std::string& v = pick(rng_, pool);
                a.args.push_back(Term::variable(v));
                if (std::find(bound_.begin(), bound_.end(), v) == bound_.end()) bound_.push_back(v);
            } else {
                a.args.push_back(safe_term());
            }
        }
        return a;
    }

    Comparison comparison() {
        Term lhs = safe_term();
        if (lhs.is_variable() && chance(rng_, 0.2)) lhs = Term::operation(Operator::Plus, {lhs, Term::numeral(1)});
        return Comparison{lhs, random_relation(rng_), safe_term()};
    }

    std::optional<Aggregate> aggregate() {
        std::vector<PredicateSymbol> unary;
        for (const auto& p : preds_) {
            if (p.arity >= 1) unary.push_back(p);
        }
        if (unary.empty()) return std::nullopt;
        Aggregate agg;
        agg.function = chance(rng_, 0.5) ? AggregateFunction::Count : AggregateFunction::Sum;
        const PredicateSymbol& p = pick(rng_, unary);
        Atom cond{p.name, {}};
        const std::size_t slot = below(rng_, p.arity);
        for (std::size_t i = 0; i < p.arity; ++i) cond.args.push_back(i == slot ? Term::variable("U") : safe_term());
        agg.tuple.push_back(Term::variable("U"));
        agg.condition.push_back(Literal{false, cond});
        if (chance(rng_, 0.3)) {
            const PredicateSymbol& q = pick(rng_, unary);
            Atom neg{q.name, {}};
            for (std::size_t i = 0; i < q.arity; ++i) neg.args.push_back(i == 0 ? Term::variable("U") : safe_term());
            agg.condition.push_back(Literal{true, neg});
        }
        if (chance(rng_, 0.2)) agg.condition.push_back(Comparison{Term::variable("U"), random_relation(rng_), constant()});
        agg.rel = random_relation(rng_);
        agg.bound = Term::numeral(static_cast<std::int64_t>(below(rng_, 4)));
        return agg;
    }

    Rule rule(bool with_aggregate) {
        bound_.clear();
        Rule r;
        const std::size_t kind = below(rng_, 10);
        r.kind = kind < 5 ? Rule::Kind::Basic : kind < 7 ? Rule::Kind::Choice : Rule::Kind::Constraint;
        std::size_t size = below(rng_, options_.max_body + 1);
        if (r.kind == Rule::Kind::Constraint && size == 0) size = 1;
        std::vector<BodyElement> positives;
        std::vector<BodyElement> rest;
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t what = below(rng_, 8);
            if (what < 4) {
                positives.emplace_back(Literal{false, atom_over(pick(rng_, preds_), true)});
            } else if (what == 4) {
                // X = lo..hi binds X without an atom.
                const std::string v = bound_.size() < 3 ? std::string(1, static_cast<char>('X' + bound_.size())) : "X";
                const auto lo = static_cast<std::int64_t>(1 + below(rng_, 2));
                positives.emplace_back(
                    Comparison{Term::variable(v), Relation::Eq, Term::interval(Term::numeral(lo), Term::numeral(lo + 1))});
                if (std::find(bound_.begin(), bound_.end(), v) == bound_.end()) bound_.push_back(v);
            } else {
                rest.emplace_back();
            }
        }
        // Negative literals and comparisons only mention variables bound above.
        for (auto& e : rest) {
            if (chance(rng_, 0.6)) {
                e = Literal{true, atom_over(pick(rng_, preds_), false)};
            } else {
                e = comparison();
            }
        }
        r.body = std::move(positives);
        r.body.insert(r.body.end(), rest.begin(), rest.end());
        if (with_aggregate) {
            if (auto agg = aggregate()) r.body.emplace_back(std::move(*agg));
        }
        if (r.kind != Rule::Kind::Constraint) r.head = atom_over(pick(rng_, preds_), false);
        return r;
    }

    Rng& rng_;
    const RandomProgramOptions& options_;
    std::vector<Term> constants_;
    std::vector<PredicateSymbol> preds_;
    std::vector<std::string> bound_;
};

class FormulaBuilder {
public:
    FormulaBuilder(Rng& rng, const RandomFormulaOptions& options) : rng_(rng), options_(options) {}

    Formula formula(std::size_t depth) {
        if (depth == 0 || chance(rng_, 0.25)) return atomic();
        switch (below(rng_, 7)) {
            case 0: return Formula::negation(formula(depth - 1));
            case 1: return Formula::conjunction(children(depth));
            case 2: return Formula::disjunction(children(depth));
            case 3: return Formula::implies(formula(depth - 1), formula(depth - 1));
            case 4: return Formula::iff(formula(depth - 1), formula(depth - 1));
            default: return quantified(depth);
        }
    }

private:
    std::vector<Formula> children(std::size_t depth) {
        std::vector<Formula> out;
        const std::size_t n = 2 + below(rng_, 2);
        for (std::size_t i = 0; i < n; ++i) out.push_back(formula(depth - 1));
        return out;
    }

    Formula quantified(std::size_t depth) {
        static const std::vector<std::string> general{"X", "Y", "Z"};
        static const std::vector<std::string> integer{"N", "M"};
        const bool as_integer = options_.integer_variables && chance(rng_, 0.3);
        const Variable v = as_integer ? Variable::integer(pick(rng_, integer)) : Variable::general(pick(rng_, general));
        scope_.push_back(v);
        Formula body = formula(depth - 1);
        // Usually let the variable occur in an equality or membership, as completions do.
        if (chance(rng_, 0.5)) {
            Formula guard = chance(rng_, 0.5) ? Formula::compare(Argument::variable(v), Relation::Eq, argument(1))
                                              : Formula::member(Argument::variable(v), term());
            body = Formula::conjunction({std::move(guard), std::move(body)});
        }
        scope_.pop_back();
        return chance(rng_, 0.5) ? Formula::exists({v}, std::move(body)) : Formula::forall({v}, std::move(body));
    }

    Argument argument(std::size_t depth) {
        const std::size_t what = below(rng_, 10);
        if (what < 4 && !scope_.empty()) return Argument::variable(pick(rng_, scope_));
        if (what == 4) return Argument::symbol("a");
        if (what == 5 && depth > 0) {
            std::vector<Variable> ints;
            for (const auto& v : scope_) {
                if (v.is_integer()) ints.push_back(v);
            }
            Argument x = ints.empty() ? Argument::numeral(static_cast<std::int64_t>(below(rng_, 4)))
                                      : Argument::variable(pick(rng_, ints));
            static const std::vector<Operator> ops{Operator::Plus, Operator::Minus, Operator::Times};
            return Argument::operation(pick(rng_, ops), {x, Argument::numeral(static_cast<std::int64_t>(below(rng_, 3)))});
        }
        if (what == 6 && depth > 0 && options_.aggregates) {
            const Variable z = Variable::general(fresh());
            const AggregateFunction fn = chance(rng_, 0.5) ? AggregateFunction::Count : AggregateFunction::Sum;
            Formula cond = chance(rng_, 0.5)
                               ? Formula::atom("p", {Argument::variable(z)})
                               : Formula::atom("q", {Argument::variable(z), argument(0)});
            if (chance(rng_, 0.3)) cond = Formula::conjunction({cond, Formula::negation(Formula::atom("r"))});
            return Argument::aggregate(fn, {z}, std::move(cond));
        }
        return Argument::numeral(static_cast<std::int64_t>(below(rng_, 4)));
    }

    Term term() {
        auto simple = [&]() {
            if (!scope_.empty() && chance(rng_, 0.4)) return Term::variable(pick(rng_, scope_).name);
            return Term::numeral(static_cast<std::int64_t>(below(rng_, 4)));
        };
        switch (below(rng_, 4)) {
            case 0: return Term::interval(simple(), simple());
            case 1: return Term::operation(Operator::Plus, {simple(), Term::numeral(1)});
            case 2: return chance(rng_, 0.5) ? Term::symbol("a") : simple();
            default: return simple();
        }
    }

    Formula atomic() {
        switch (below(rng_, 9)) {
            case 0: return Formula::atom("r");
            case 1:
            case 2: return Formula::atom("p", {argument(1)});
            case 3: return Formula::atom("q", {argument(1), argument(1)});
            case 4:
            case 5: return Formula::compare(argument(1), random_relation(rng_), argument(1));
            case 6:
            case 7: return Formula::member(argument(0), term());
            default: return chance(rng_, 0.5) ? Formula::top() : Formula::bottom();
        }
    }

    std::string fresh() { return "Z" + std::to_string(++counter_); }

    Rng& rng_;
    const RandomFormulaOptions& options_;
    std::vector<Variable> scope_;
    int counter_ = 0;
};

ValueSet small_values() {
    return {Value::numeral(0), Value::numeral(1), Value::numeral(2), Value::numeral(3), Value::symbol("a")};
}

}  // namespace

RandomProgram random_program(Rng& rng, const RandomProgramOptions& options) {
    return ProgramBuilder(rng, options).build();
}

InstantiationConfig random_program_config(const RandomProgram& p) {
    InstantiationConfig cfg = default_config(p.program);
    cfg.domain.general.insert(cfg.domain.general.end(), p.constants.begin(), p.constants.end());
    normalize(cfg.domain.general);
    return cfg;
}

Formula random_formula(Rng& rng, const RandomFormulaOptions& options) {
    return FormulaBuilder(rng, options).formula(options.max_depth);
}

Interpretation random_interpretation(Rng& rng) {
    Interpretation out;
    const ValueSet values = small_values();
    if (chance(rng, 0.5)) out.insert({"r", {}});
    for (const auto& v : values) {
        if (chance(rng, 0.4)) out.insert({"p", {v}});
        for (const auto& w : values) {
            if (chance(rng, 0.15)) out.insert({"q", {v, w}});
        }
    }
    return out;
}

EvalDomain random_domain(Rng& rng) {
    EvalDomain d;
    d.general = small_values();
    d.general.push_back(Value::symbol("b"));
    d.int_lo = -1 - static_cast<std::int64_t>(below(rng, 2));
    d.int_hi = 4 + static_cast<std::int64_t>(below(rng, 2));
    d.complete();
    return d;
}

RandomAggregate random_aggregate(Rng& rng, std::size_t max_elements) {
    static const InstantiationConfig cfg{};
    while (true) {
        RandomAggregate out;
        const ValueSet values{Value::numeral(1), Value::numeral(2), Value::numeral(3)};
        for (const auto& v : values) {
            if (chance(rng, 0.6)) out.universe.insert({"p", {v}});
            for (const auto& w : values) {
                if (chance(rng, 0.3)) out.universe.insert({"q", {v, w}});
            }
        }
        Aggregate& agg = out.expression;
        agg.function = chance(rng, 0.5) ? AggregateFunction::Count : AggregateFunction::Sum;
        const bool pair = chance(rng, 0.5);
        const Term x = Term::variable("X");
        const Term y = Term::variable("Y");
        agg.condition.push_back(pair ? Condition(Literal{false, Atom{"q", {x, y}}}) : Condition(Literal{false, Atom{"p", {x}}}));
        if (chance(rng, 0.4)) {
            agg.condition.push_back(Literal{true, Atom{"p", {pair && chance(rng, 0.5) ? y : x}}});
        }
        if (chance(rng, 0.3)) agg.condition.push_back(Literal{false, Atom{"p", {Term::operation(Operator::Plus, {x, Term::numeral(1)})}}});
        if (chance(rng, 0.3)) {
            agg.condition.push_back(Comparison{x, random_relation(rng), Term::numeral(static_cast<std::int64_t>(1 + below(rng, 3)))});
        }
        switch (below(rng, 4)) {
            case 0: agg.tuple = {x}; break;
            case 1: agg.tuple = {Term::operation(Operator::Times, {x, x})}; break;
            case 2: agg.tuple = pair ? std::vector<Term>{y, x} : std::vector<Term>{x, Term::symbol("a")}; break;
            default: agg.tuple = {Term::operation(Operator::Minus, {x, Term::numeral(2)})}; break;
        }
        agg.rel = random_relation(rng);
        agg.bound = Term::numeral(static_cast<std::int64_t>(below(rng, 5)));
        GroundingSetting setting{&out.universe, &cfg, false};
        const GroundFormula g = tau_body({agg}, setting);
        out.ground = *g.aggregate;
        if (out.ground.elements.size() <= max_elements) return out;
    }
}

}  // namespace eg
