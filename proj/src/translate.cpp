#include "eg/translate.hpp"

#include <algorithm>

namespace eg {

Variable NameSupply::fresh(const std::string& base) {
    int& counter = counters_[base];
    for (;;) {
        std::string name = base + std::to_string(++counter);
        if (std::find(avoid_.begin(), avoid_.end(), name) == avoid_.end()) {
            avoid_.push_back(name);
            return Variable::general(std::move(name));
        }
    }
}

namespace {

Argument var_arg(const Variable& v) { return Argument::variable(v); }

std::vector<Formula> flatten_and(Formula f) {
    if (f.kind == Formula::Kind::And) return std::move(f.children);
    if (f.kind == Formula::Kind::Top) return {};
    return {std::move(f)};
}

Formula phi_condition(const Condition& c, NameSupply& names) {
    if (const auto* lit = std::get_if<Literal>(&c)) return phi_literal(*lit, names);
    return phi_comparison(std::get<Comparison>(c), names);
}

bool reserved_name(const std::string& name) {
    return !name.empty() && std::string_view("IJKLMN").find(name.front()) != std::string_view::npos;
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& renaming) {
    if (t.kind == Term::Kind::Variable) {
        auto it = renaming.find(t.name);
        return it == renaming.end() ? t : Term::variable(it->second);
    }
    Term out = t;
    for (auto& a : out.args) a = rename_term(a, renaming);
    return out;
}

void rename_atom(Atom& a, const std::map<std::string, std::string>& renaming) {
    for (auto& t : a.args) t = rename_term(t, renaming);
}

void rename_condition(Condition& c, const std::map<std::string, std::string>& renaming) {
    if (auto* lit = std::get_if<Literal>(&c)) {
        rename_atom(lit->atom, renaming);
    } else {
        auto& cmp = std::get<Comparison>(c);
        cmp.lhs = rename_term(cmp.lhs, renaming);
        cmp.rhs = rename_term(cmp.rhs, renaming);
    }
}

std::vector<std::string> aggregate_variables(const Aggregate& agg) {
    std::vector<std::string> out;
    for (const auto& t : agg.tuple) collect_variables(t, out);
    for (const auto& c : agg.condition) {
        if (const auto* lit = std::get_if<Literal>(&c)) {
            for (const auto& t : lit->atom.args) collect_variables(t, out);
        } else {
            const auto& cmp = std::get<Comparison>(c);
            collect_variables(cmp.lhs, out);
            collect_variables(cmp.rhs, out);
        }
    }
    return out;
}

}  // namespace

Formula phi_literal(const Literal& lit, NameSupply& names) {
    std::vector<Variable> vars;
    std::vector<Formula> parts;
    std::vector<Argument> args;
    for (const auto& t : lit.atom.args) {
        Variable y = names.fresh("Y");
        parts.push_back(Formula::member(var_arg(y), t));
        args.push_back(var_arg(y));
        vars.push_back(std::move(y));
    }
    Formula atom = Formula::atom(lit.atom.predicate, std::move(args));
    parts.push_back(lit.negative ? Formula::negation(std::move(atom)) : std::move(atom));
    return Formula::exists(std::move(vars), Formula::conjunction(std::move(parts)));
}

Formula phi_comparison(const Comparison& cmp, NameSupply& names) {
    Variable x1 = names.fresh("X");
    Variable x2 = names.fresh("X");
    std::vector<Formula> parts;
    parts.push_back(Formula::member(var_arg(x1), cmp.lhs));
    parts.push_back(Formula::member(var_arg(x2), cmp.rhs));
    parts.push_back(Formula::compare(var_arg(x1), cmp.rel, var_arg(x2)));
    return Formula::exists({x1, x2}, Formula::conjunction(std::move(parts)));
}

Formula phi_aggregate(const Aggregate& agg, const std::vector<std::string>& locals, NameSupply& names) {
    std::vector<Variable> zs;
    std::vector<Formula> parts;
    for (const auto& t : agg.tuple) {
        Variable z = names.fresh("Z");
        parts.push_back(Formula::member(var_arg(z), t));
        zs.push_back(std::move(z));
    }
    for (const auto& c : agg.condition) parts.push_back(phi_condition(c, names));
    std::vector<Variable> bound;
    for (const auto& v : aggregate_variables(agg)) {
        if (std::find(locals.begin(), locals.end(), v) != locals.end()) bound.push_back(Variable::general(v));
    }
    Formula body = Formula::exists(std::move(bound), Formula::conjunction(std::move(parts)));
    Variable y = names.fresh("Y");
    Argument value = Argument::aggregate(agg.function, std::move(zs), std::move(body));
    std::vector<Formula> outer;
    outer.push_back(Formula::compare(std::move(value), agg.rel, var_arg(y)));
    outer.push_back(Formula::member(var_arg(y), agg.bound));
    return Formula::exists({y}, Formula::conjunction(std::move(outer)));
}

Formula phi_body(const std::vector<BodyElement>& body, const std::vector<std::string>& locals, NameSupply& names) {
    std::vector<Formula> parts;
    for (const auto& e : body) {
        if (const auto* lit = std::get_if<Literal>(&e)) {
            parts.push_back(phi_literal(*lit, names));
        } else if (const auto* cmp = std::get_if<Comparison>(&e)) {
            parts.push_back(phi_comparison(*cmp, names));
        } else {
            parts.push_back(phi_aggregate(std::get<Aggregate>(e), locals, names));
        }
    }
    return Formula::conjunction(std::move(parts));
}

Translator::Translator(const Program& program) {
    std::vector<std::string> original;
    for (const auto& r : program.rules) {
        for (auto& v : variables(r)) {
            if (std::find(original.begin(), original.end(), v) == original.end()) original.push_back(v);
        }
    }
    names_ = original;
    for (const auto& v : original) {
        if (!reserved_name(v)) continue;
        std::string candidate = "G" + v;
        while (std::find(names_.begin(), names_.end(), candidate) != names_.end()) candidate = "G" + candidate;
        renaming_[v] = candidate;
        names_.push_back(candidate);
    }
    names_.erase(std::remove_if(names_.begin(), names_.end(), [&](const std::string& n) { return renaming_.count(n); }),
                 names_.end());
}

const std::vector<Variable>& Translator::head_variables(const PredicateSymbol& pred) {
    auto it = heads_.find(pred);
    if (it != heads_.end()) return it->second;
    std::string base = "V";
    auto clashes = [&](const std::string& b) {
        for (std::size_t i = 1; i <= std::max<std::size_t>(pred.arity, 1); ++i) {
            const std::string name = pred.arity == 1 ? b : b + std::to_string(i);
            if (std::find(names_.begin(), names_.end(), name) != names_.end()) return true;
        }
        return false;
    };
    while (clashes(base)) base += "V";
    std::vector<Variable> vars;
    for (std::size_t i = 1; i <= pred.arity; ++i) {
        vars.push_back(Variable::general(pred.arity == 1 ? base : base + std::to_string(i)));
    }
    return heads_.emplace(pred, std::move(vars)).first->second;
}

Rule Translator::renamed(const Rule& rule) const {
    if (renaming_.empty()) return rule;
    Rule out = rule;
    rename_atom(out.head, renaming_);
    for (auto& e : out.body) {
        if (auto* lit = std::get_if<Literal>(&e)) {
            rename_atom(lit->atom, renaming_);
        } else if (auto* cmp = std::get_if<Comparison>(&e)) {
            cmp->lhs = rename_term(cmp->lhs, renaming_);
            cmp->rhs = rename_term(cmp->rhs, renaming_);
        } else {
            auto& agg = std::get<Aggregate>(e);
            for (auto& t : agg.tuple) t = rename_term(t, renaming_);
            for (auto& c : agg.condition) rename_condition(c, renaming_);
            agg.bound = rename_term(agg.bound, renaming_);
        }
    }
    return out;
}

RuleRepresentation Translator::represent(const Rule& original) {
    const Rule rule = renamed(original);
    RuleRepresentation rep;
    rep.kind = rule.kind;
    std::vector<std::string> avoid = names_;
    if (rule.kind != Rule::Kind::Constraint) {
        rep.head = predicate_of(rule.head);
        rep.head_vars = head_variables(rep.head);
        for (const auto& v : rep.head_vars) avoid.push_back(v.name);
    }
    NameSupply names(std::move(avoid));
    const auto locals = classify_variables(rule).locals;
    Formula body = phi_body(rule.body, locals, names);
    if (rule.kind == Rule::Kind::Constraint) {
        rep.antecedent = Formula::negation(std::move(body));
        rep.formula = rep.antecedent;
        return rep;
    }
    std::vector<Formula> parts;
    std::vector<Argument> head_args;
    for (std::size_t i = 0; i < rep.head_vars.size(); ++i) {
        parts.push_back(Formula::member(var_arg(rep.head_vars[i]), rule.head.args[i]));
        head_args.push_back(var_arg(rep.head_vars[i]));
    }
    for (auto& f : flatten_and(std::move(body))) parts.push_back(std::move(f));
    Formula head = Formula::atom(rule.head.predicate, std::move(head_args));
    if (rule.kind == Rule::Kind::Choice) parts.push_back(head);
    rep.antecedent = Formula::conjunction(std::move(parts));
    rep.formula = Formula::implies(rep.antecedent, std::move(head));
    return rep;
}

RuleRepresentation represent_rule(const Rule& rule) {
    Program single;
    single.rules.push_back(rule);
    Translator translator(single);
    return translator.represent(rule);
}

}  // namespace eg
