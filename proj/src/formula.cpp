#include "eg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace eg {

Argument Argument::numeral(std::int64_t n) {
    Argument a;
    a.kind = Kind::Numeral;
    a.number = n;
    return a;
}

Argument Argument::symbol(std::string name) {
    Argument a;
    a.kind = Kind::Symbol;
    a.name = std::move(name);
    return a;
}

Argument Argument::variable(const Variable& v) {
    Argument a;
    a.kind = Kind::Variable;
    a.name = v.name;
    a.sort = v.sort;
    return a;
}

Argument Argument::inf() {
    Argument a;
    a.kind = Kind::Inf;
    return a;
}

Argument Argument::sup() {
    Argument a;
    a.kind = Kind::Sup;
    return a;
}

Argument Argument::function_term(std::string name, std::vector<Argument> args) {
    if (args.empty()) throw std::invalid_argument("function argument " + name + " needs at least one argument");
    Argument a;
    a.kind = Kind::Function;
    a.name = std::move(name);
    a.args = std::move(args);
    return a;
}

Argument Argument::operation(Operator op, std::vector<Argument> args) {
    if (!is_total(op)) {
        throw std::invalid_argument("operation " + std::string(eg::symbol(op)) + " is not total and cannot form an argument");
    }
    if (args.size() != arity(op)) throw std::invalid_argument("operation arity mismatch");
    for (const auto& a : args) {
        if (!a.is_integer_argument()) {
            throw std::invalid_argument("operands of " + std::string(eg::symbol(op)) + " must be integer arguments");
        }
    }
    Argument a;
    a.kind = Kind::Operation;
    a.op = op;
    a.args = std::move(args);
    return a;
}

Argument Argument::aggregate(AggregateFunction fn, std::vector<Variable> vars, Formula body) {
    if (vars.empty()) throw std::invalid_argument("aggregate needs at least one bound variable");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            if (vars[i].name == vars[j].name) throw std::invalid_argument("aggregate variables must be distinct");
        }
    }
    Argument a;
    a.kind = Kind::Aggregate;
    a.function = fn;
    a.bound = std::move(vars);
    a.body.push_back(std::move(body));
    return a;
}

Argument Argument::from_value(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Inf: return inf();
        case Value::Kind::Sup: return sup();
        case Value::Kind::Numeral: return numeral(v.number);
        case Value::Kind::Symbol: return symbol(v.name);
        case Value::Kind::Function: {
            std::vector<Argument> args;
            for (const auto& x : v.args) args.push_back(from_value(x));
            return function_term(v.name, std::move(args));
        }
    }
    return inf();
}

bool Argument::is_integer_argument() const {
    switch (kind) {
        case Kind::Numeral: return true;
        case Kind::Variable: return sort == Variable::Sort::Integer;
        case Kind::Operation:
            return std::all_of(args.begin(), args.end(), [](const Argument& a) { return a.is_integer_argument(); });
        default: return false;
    }
}

bool Argument::contains_aggregate() const {
    if (kind == Kind::Aggregate) return true;
    return std::any_of(args.begin(), args.end(), [](const Argument& a) { return a.contains_aggregate(); });
}

bool Argument::operator==(const Argument& other) const = default;
bool Formula::operator==(const Formula& other) const = default;

Formula Formula::atom(std::string predicate, std::vector<Argument> args) {
    Formula f;
    f.kind = Kind::Atom;
    f.predicate = std::move(predicate);
    f.args = std::move(args);
    return f;
}

Formula Formula::compare(Argument lhs, Relation rel, Argument rhs) {
    Formula f;
    f.kind = Kind::Compare;
    f.rel = rel;
    f.args.push_back(std::move(lhs));
    f.args.push_back(std::move(rhs));
    return f;
}

Formula Formula::member(Argument lhs, Term rhs) {
    Formula f;
    f.kind = Kind::Member;
    f.args.push_back(std::move(lhs));
    f.term = std::move(rhs);
    return f;
}

Formula Formula::bottom() { return Formula{}; }

Formula Formula::top() {
    Formula f;
    f.kind = Kind::Top;
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(g));
    return f;
}

Formula Formula::conjunction(std::vector<Formula> fs) {
    if (fs.empty()) return top();
    if (fs.size() == 1) return std::move(fs.front());
    Formula f;
    f.kind = Kind::And;
    f.children = std::move(fs);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> fs) {
    if (fs.empty()) return bottom();
    if (fs.size() == 1) return std::move(fs.front());
    Formula f;
    f.kind = Kind::Or;
    f.children = std::move(fs);
    return f;
}

Formula Formula::implies(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Implies;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

Formula Formula::iff(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Iff;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

Formula Formula::forall(std::vector<Variable> vars, Formula body) {
    if (vars.empty()) return body;
    Formula f;
    f.kind = Kind::Forall;
    f.vars = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
}

Formula Formula::exists(std::vector<Variable> vars, Formula body) {
    if (vars.empty()) return body;
    Formula f;
    f.kind = Kind::Exists;
    f.vars = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
}

namespace {

bool binds(const std::vector<Variable>& block, const std::string& name) {
    return std::any_of(block.begin(), block.end(), [&](const Variable& v) { return v.name == name; });
}

class FreeCollector {
public:
    std::vector<Variable> out;

    void formula(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Atom:
            case Formula::Kind::Compare:
                for (const auto& a : f.args) argument(a);
                break;
            case Formula::Kind::Member:
                argument(f.args[0]);
                term(f.term);
                break;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists:
                bound_.push_back(f.vars);
                formula(f.children[0]);
                bound_.pop_back();
                break;
            default:
                for (const auto& c : f.children) formula(c);
                break;
        }
    }

    void argument(const Argument& a) {
        if (a.kind == Argument::Kind::Variable) {
            add(a.as_variable());
        } else if (a.kind == Argument::Kind::Aggregate) {
            bound_.push_back(a.bound);
            formula(a.condition());
            bound_.pop_back();
        } else {
            for (const auto& x : a.args) argument(x);
        }
    }

    void term(const Term& t) {
        if (t.kind == Term::Kind::Variable) {
            add(Variable::general(t.name));
            return;
        }
        for (const auto& x : t.args) term(x);
    }

private:
    void add(const Variable& v) {
        for (const auto& block : bound_) {
            if (binds(block, v.name)) return;
        }
        auto it = std::find_if(out.begin(), out.end(), [&](const Variable& w) { return w.name == v.name; });
        if (it == out.end()) {
            out.push_back(v);
        } else if (v.is_integer()) {
            // Member terms carry no sorts; an argument occurrence decides.
            it->sort = v.sort;
        }
    }

    std::vector<std::vector<Variable>> bound_;
};

bool term_has_variable(const Term& t, const std::string& name) {
    if (t.kind == Term::Kind::Variable) return t.name == name;
    return std::any_of(t.args.begin(), t.args.end(), [&](const Term& x) { return term_has_variable(x, name); });
}

Term substitute_term(const Term& t, const std::string& var, const Term& r) {
    if (t.kind == Term::Kind::Variable) return t.name == var ? r : t;
    Term out = t;
    for (auto& a : out.args) a = substitute_term(a, var, r);
    return out;
}

void collect_term_names(const Term& t, std::vector<std::string>& out) { collect_variables(t, out); }

void collect_argument_names(const Argument& a, std::vector<std::string>& out) {
    if (a.kind == Argument::Kind::Variable) {
        if (std::find(out.begin(), out.end(), a.name) == out.end()) out.push_back(a.name);
    } else if (a.kind == Argument::Kind::Aggregate) {
        for (const auto& v : a.bound) {
            if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
        }
        collect_all_names(a.condition(), out);
    }
    for (const auto& x : a.args) collect_argument_names(x, out);
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
    for (int i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (std::find(avoid.begin(), avoid.end(), candidate) == avoid.end()) return candidate;
    }
}

// Free-occurrence substitution of an argument; returns nullopt when a Member
// right-hand side would need a non-term replacement.
class Substituter {
public:
    Substituter(std::string var, Argument replacement)
        : var_(std::move(var)), repl_(std::move(replacement)), repl_term_(to_term(repl_)) {
        for (const auto& v : free_variables(repl_)) repl_free_.push_back(v.name);
    }

    std::optional<Formula> formula(const Formula& f) {
        if (!occurs_free(var_, f)) return f;
        Formula out = f;
        switch (f.kind) {
            case Formula::Kind::Atom:
            case Formula::Kind::Compare:
                for (auto& a : out.args) {
                    auto r = argument(a);
                    if (!r) return std::nullopt;
                    a = std::move(*r);
                }
                return out;
            case Formula::Kind::Member: {
                auto r = argument(out.args[0]);
                if (!r) return std::nullopt;
                out.args[0] = std::move(*r);
                if (term_has_variable(out.term, var_)) {
                    if (!repl_term_) return std::nullopt;
                    out.term = substitute_term(out.term, var_, *repl_term_);
                }
                return out;
            }
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                if (binds(f.vars, var_)) return out;
                if (!rename_block(out.vars, out.children[0])) return std::nullopt;
                auto body = formula(out.children[0]);
                if (!body) return std::nullopt;
                out.children[0] = std::move(*body);
                return out;
            }
            default:
                for (auto& c : out.children) {
                    auto r = formula(c);
                    if (!r) return std::nullopt;
                    c = std::move(*r);
                }
                return out;
        }
    }

    std::optional<Argument> argument(const Argument& a) {
        switch (a.kind) {
            case Argument::Kind::Variable: return a.name == var_ ? repl_ : a;
            case Argument::Kind::Aggregate: {
                if (binds(a.bound, var_)) return a;
                Argument out = a;
                if (!rename_block(out.bound, out.body[0])) return std::nullopt;
                auto body = formula(out.body[0]);
                if (!body) return std::nullopt;
                out.body[0] = std::move(*body);
                return out;
            }
            default: {
                Argument out = a;
                for (auto& x : out.args) {
                    auto r = argument(x);
                    if (!r) return std::nullopt;
                    x = std::move(*r);
                }
                return out;
            }
        }
    }

private:
    // Renames block variables that would capture free variables of the replacement.
    bool rename_block(std::vector<Variable>& block, Formula& body) {
        for (auto& v : block) {
            if (std::find(repl_free_.begin(), repl_free_.end(), v.name) == repl_free_.end()) continue;
            std::vector<std::string> avoid = repl_free_;
            collect_all_names(body, avoid);
            avoid.push_back(var_);
            for (const auto& w : block) avoid.push_back(w.name);
            std::string base = v.name;
            while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
            if (base.empty()) base = v.name;
            Variable renamed{fresh_name(base, avoid), v.sort};
            auto r = substitute(body, v.name, Argument::variable(renamed));
            if (!r) return false;
            body = std::move(*r);
            v = renamed;
        }
        return true;
    }

    std::string var_;
    Argument repl_;
    std::optional<Term> repl_term_;
    std::vector<std::string> repl_free_;
};

Formula core_not(Formula f) { return Formula::implies(std::move(f), Formula::bottom()); }

Argument argument_to_core(const Argument& a);

Formula core_and(std::vector<Formula> fs) {
    if (fs.empty()) return core_not(Formula::bottom());
    Formula acc = std::move(fs.back());
    for (std::size_t i = fs.size() - 1; i-- > 0;) {
        acc = core_not(Formula::implies(std::move(fs[i]), core_not(std::move(acc))));
    }
    return acc;
}

Formula core_forall(const std::vector<Variable>& vars, Formula body) {
    for (std::size_t i = vars.size(); i-- > 0;) {
        Formula f;
        f.kind = Formula::Kind::Forall;
        f.vars = {vars[i]};
        f.children.push_back(std::move(body));
        body = std::move(f);
    }
    return body;
}

Argument argument_to_core(const Argument& a) {
    Argument out = a;
    for (auto& x : out.args) x = argument_to_core(x);
    for (auto& b : out.body) b = to_core(b);
    return out;
}

void count_argument(const Argument& a, std::size_t& n);

void count_formula(const Formula& f, std::size_t& n) {
    ++n;
    for (const auto& a : f.args) count_argument(a, n);
    for (const auto& c : f.children) count_formula(c, n);
}

void count_argument(const Argument& a, std::size_t& n) {
    ++n;
    for (const auto& x : a.args) count_argument(x, n);
    for (const auto& b : a.body) count_formula(b, n);
}

}  // namespace

std::vector<Variable> free_variables(const Formula& f) {
    FreeCollector c;
    c.formula(f);
    return c.out;
}

std::vector<Variable> free_variables(const Argument& a) {
    FreeCollector c;
    c.argument(a);
    return c.out;
}

bool occurs_free(const std::string& name, const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Compare:
            return std::any_of(f.args.begin(), f.args.end(), [&](const Argument& a) { return occurs_free(name, a); });
        case Formula::Kind::Member: return occurs_free(name, f.args[0]) || term_has_variable(f.term, name);
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: return !binds(f.vars, name) && occurs_free(name, f.children[0]);
        default:
            return std::any_of(f.children.begin(), f.children.end(),
                               [&](const Formula& c) { return occurs_free(name, c); });
    }
}

bool occurs_free(const std::string& name, const Argument& a) {
    switch (a.kind) {
        case Argument::Kind::Variable: return a.name == name;
        case Argument::Kind::Aggregate: return !binds(a.bound, name) && occurs_free(name, a.condition());
        default:
            return std::any_of(a.args.begin(), a.args.end(), [&](const Argument& x) { return occurs_free(name, x); });
    }
}

void collect_all_names(const Formula& f, std::vector<std::string>& out) {
    for (const auto& v : f.vars) {
        if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
    }
    for (const auto& a : f.args) collect_argument_names(a, out);
    if (f.kind == Formula::Kind::Member) collect_term_names(f.term, out);
    for (const auto& c : f.children) collect_all_names(c, out);
}

Formula substitute(const Formula& f, const std::string& var, const Value& r) {
    // A precomputed replacement is always a term and has no free variables.
    return *substitute(f, var, Argument::from_value(r));
}

Argument substitute(const Argument& a, const std::string& var, const Value& r) {
    Substituter s(var, Argument::from_value(r));
    return *s.argument(a);
}

std::optional<Formula> substitute(const Formula& f, const std::string& var, const Argument& replacement) {
    Substituter s(var, replacement);
    return s.formula(f);
}

std::optional<Term> to_term(const Argument& a) {
    switch (a.kind) {
        case Argument::Kind::Numeral: return Term::numeral(a.number);
        case Argument::Kind::Symbol: return Term::symbol(a.name);
        case Argument::Kind::Variable: return Term::variable(a.name);
        case Argument::Kind::Inf: return Term::inf();
        case Argument::Kind::Sup: return Term::sup();
        case Argument::Kind::Function:
        case Argument::Kind::Operation: {
            std::vector<Term> args;
            for (const auto& x : a.args) {
                auto t = to_term(x);
                if (!t) return std::nullopt;
                args.push_back(std::move(*t));
            }
            if (a.kind == Argument::Kind::Function) return Term::function(a.name, std::move(args));
            return Term::operation(a.op, std::move(args));
        }
        case Argument::Kind::Aggregate: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Argument> to_argument(const Term& t, const std::vector<Variable>& integer_vars) {
    switch (t.kind) {
        case Term::Kind::Numeral: return Argument::numeral(t.number);
        case Term::Kind::Symbol: return Argument::symbol(t.name);
        case Term::Kind::Variable: {
            const bool integer = std::any_of(integer_vars.begin(), integer_vars.end(),
                                             [&](const Variable& v) { return v.name == t.name && v.is_integer(); });
            return Argument::variable(integer ? Variable::integer(t.name) : Variable::general(t.name));
        }
        case Term::Kind::Inf: return Argument::inf();
        case Term::Kind::Sup: return Argument::sup();
        case Term::Kind::Function: {
            std::vector<Argument> args;
            for (const auto& x : t.args) {
                auto a = to_argument(x, integer_vars);
                if (!a) return std::nullopt;
                args.push_back(std::move(*a));
            }
            return Argument::function_term(t.name, std::move(args));
        }
        case Term::Kind::Operation: {
            if (!is_total(t.op)) return std::nullopt;
            std::vector<Argument> args;
            for (const auto& x : t.args) {
                auto a = to_argument(x, integer_vars);
                if (!a || !a->is_integer_argument()) return std::nullopt;
                args.push_back(std::move(*a));
            }
            return Argument::operation(t.op, std::move(args));
        }
        case Term::Kind::Interval: return std::nullopt;
    }
    return std::nullopt;
}

Formula to_core(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Compare:
        case Formula::Kind::Member: {
            Formula out = f;
            for (auto& a : out.args) a = argument_to_core(a);
            return out;
        }
        case Formula::Kind::Bottom: return f;
        case Formula::Kind::Top: return core_not(Formula::bottom());
        case Formula::Kind::Not: return core_not(to_core(f.children[0]));
        case Formula::Kind::And: {
            std::vector<Formula> cs;
            for (const auto& c : f.children) cs.push_back(to_core(c));
            return core_and(std::move(cs));
        }
        case Formula::Kind::Or: {
            if (f.children.empty()) return Formula::bottom();
            Formula acc = to_core(f.children.back());
            for (std::size_t i = f.children.size() - 1; i-- > 0;) {
                acc = Formula::implies(core_not(to_core(f.children[i])), std::move(acc));
            }
            return acc;
        }
        case Formula::Kind::Implies: return Formula::implies(to_core(f.children[0]), to_core(f.children[1]));
        case Formula::Kind::Iff: {
            Formula a = to_core(f.children[0]);
            Formula b = to_core(f.children[1]);
            std::vector<Formula> both;
            both.push_back(Formula::implies(a, b));
            both.push_back(Formula::implies(b, a));
            return core_and(std::move(both));
        }
        case Formula::Kind::Forall: return core_forall(f.vars, to_core(f.children[0]));
        case Formula::Kind::Exists: return core_not(core_forall(f.vars, core_not(to_core(f.children[0]))));
    }
    return f;
}

std::size_t node_count(const Formula& f) {
    std::size_t n = 0;
    count_formula(f, n);
    return n;
}

Formula universal_closure(const Formula& f) { return Formula::forall(free_variables(f), f); }

}  // namespace eg
