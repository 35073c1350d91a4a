#include "eg/simplify.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace eg {
namespace {

using Kind = Formula::Kind;

std::vector<Formula> conjuncts(const Formula& f) {
    if (f.kind == Kind::And) return f.children;
    if (f.kind == Kind::Top) return {};
    return {f};
}

bool is_numeral(const Argument& a) { return a.kind == Argument::Kind::Numeral; }

bool precomputed(const Argument& a) {
    switch (a.kind) {
        case Argument::Kind::Numeral:
        case Argument::Kind::Symbol:
        case Argument::Kind::Inf:
        case Argument::Kind::Sup: return true;
        case Argument::Kind::Function:
            return std::all_of(a.args.begin(), a.args.end(), [](const Argument& x) { return precomputed(x); });
        default: return false;
    }
}

std::optional<Value> as_value(const Argument& a) {
    switch (a.kind) {
        case Argument::Kind::Numeral: return Value::numeral(a.number);
        case Argument::Kind::Symbol: return Value::symbol(a.name);
        case Argument::Kind::Inf: return Value::inf();
        case Argument::Kind::Sup: return Value::sup();
        case Argument::Kind::Function: {
            std::vector<Value> args;
            for (const auto& x : a.args) {
                auto v = as_value(x);
                if (!v) return std::nullopt;
                args.push_back(std::move(*v));
            }
            return Value::function(a.name, std::move(args));
        }
        default: return std::nullopt;
    }
}

// Folds integer operations whose operands are all numerals.
std::optional<Argument> fold(const Argument& a) {
    if (a.kind == Argument::Kind::Aggregate) return std::nullopt;
    bool changed = false;
    Argument out = a;
    for (auto& x : out.args) {
        if (auto f = fold(x)) {
            x = std::move(*f);
            changed = true;
        }
    }
    if (out.kind == Argument::Kind::Operation &&
        std::all_of(out.args.begin(), out.args.end(), [](const Argument& x) { return is_numeral(x); })) {
        std::vector<std::int64_t> operands;
        for (const auto& x : out.args) operands.push_back(x.number);
        if (auto r = apply_operator(out.op, operands)) return Argument::numeral(*r);
    }
    if (!changed) return std::nullopt;
    return out;
}

// A conjunct whose negation reads naturally as the consequent of an implication.
std::optional<std::size_t> negatable(const std::vector<Formula>& cs) {
    for (std::size_t i = cs.size(); i-- > 0;) {
        if (cs[i].kind == Kind::Not) return i;
    }
    for (std::size_t i = cs.size(); i-- > 0;) {
        if (cs[i].kind == Kind::Compare && cs[i].rel == Relation::Ne) return i;
    }
    if (cs.size() >= 2 && cs.back().kind == Kind::Atom) return cs.size() - 1;
    return std::nullopt;
}

Formula negate(const Formula& f) {
    if (f.kind == Kind::Not) return f.child();
    if (f.kind == Kind::Compare) return Formula::compare(f.lhs(), complement(f.rel), f.rhs());
    return Formula::negation(f);
}

Formula without(const std::vector<Formula>& cs, std::size_t skip) {
    std::vector<Formula> rest;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i != skip) rest.push_back(cs[i]);
    }
    return Formula::conjunction(std::move(rest));
}

Formula quantifier(Kind kind, std::vector<Variable> vars, Formula body) {
    return kind == Kind::Forall ? Formula::forall(std::move(vars), std::move(body))
                                : Formula::exists(std::move(vars), std::move(body));
}

class Simplifier {
public:
    explicit Simplifier(const SimplifyOptions& options) : options_(options) {}

    SimplifyResult run(const Formula& f) {
        SimplifyResult result;
        scope_ = free_variables(f);
        Formula current = f;
        for (std::size_t i = 0;; ++i) {
            if (i == options_.max_passes) {
                result.capped = true;
                break;
            }
            changed_ = false;
            current = pass(current);
            if (!changed_) break;
        }
        result.formula = std::move(current);
        result.trace = std::move(trace_);
        return result;
    }

private:
    Formula pass(const Formula& f) {
        Formula out = f;
        for (auto& a : out.args) a = pass(a);
        if (f.is_quantifier()) {
            const std::size_t mark = scope_.size();
            scope_.insert(scope_.end(), f.vars.begin(), f.vars.end());
            out.children[0] = pass(f.child());
            scope_.resize(mark);
        } else {
            for (auto& c : out.children) c = pass(c);
        }
        if (auto r = rewrite(out)) {
            changed_ = true;
            return std::move(*r);
        }
        return out;
    }

    Argument pass(const Argument& a) {
        Argument out = a;
        for (auto& x : out.args) x = pass(x);
        if (a.kind == Argument::Kind::Aggregate) {
            const std::size_t mark = scope_.size();
            scope_.insert(scope_.end(), a.bound.begin(), a.bound.end());
            out.body[0] = pass(a.condition());
            scope_.resize(mark);
        }
        return out;
    }

    std::optional<Formula> step(const char* rule, const Formula& before, Formula after) {
        if (options_.record_trace) trace_.push_back({rule, before, after});
        return after;
    }

    // Innermost binding of each name in scope.
    std::vector<Variable> visible() const {
        std::vector<Variable> out;
        for (std::size_t i = scope_.size(); i-- > 0;) {
            const auto& v = scope_[i];
            if (std::none_of(out.begin(), out.end(), [&](const Variable& w) { return w.name == v.name; })) {
                out.push_back(v);
            }
        }
        return out;
    }

    std::optional<Formula> rewrite(const Formula& f) {
        switch (f.kind) {
            case Kind::Member: return member(f);
            case Kind::Atom: return atom(f);
            case Kind::Compare: return compare(f);
            case Kind::Not: return negation(f);
            case Kind::And:
            case Kind::Or: return connective(f);
            case Kind::Implies: return implication(f);
            case Kind::Iff: return equivalence(f);
            case Kind::Forall:
            case Kind::Exists: return quantified(f);
            default: return std::nullopt;
        }
    }

    std::optional<Formula> member(const Formula& f) {
        const auto scope = visible();
        if (auto arg = to_argument(f.term, scope)) {
            return step("member-to-equality", f, Formula::compare(f.lhs(), Relation::Eq, std::move(*arg)));
        }
        if (f.term.is_ground()) {
            try {
                const ValueSet values = eval_term(f.term);
                if (values.size() <= options_.expansion_threshold) {
                    std::vector<Formula> eqs;
                    for (const auto& r : values) {
                        eqs.push_back(Formula::compare(f.lhs(), Relation::Eq, Argument::from_value(r)));
                    }
                    return step("ground-expansion", f, Formula::disjunction(std::move(eqs)));
                }
            } catch (const ResourceError&) {
            }
        }
        if (f.term.kind == Term::Kind::Interval && f.lhs().is_integer_argument()) {
            auto lo = to_argument(f.term.args[0], scope);
            auto hi = to_argument(f.term.args[1], scope);
            if (lo && hi && lo->is_integer_argument() && hi->is_integer_argument()) {
                return step("integer-interval", f,
                            Formula::conjunction({Formula::compare(std::move(*lo), Relation::Le, f.lhs()),
                                                  Formula::compare(f.lhs(), Relation::Le, std::move(*hi))}));
            }
        }
        if (auto lhs = fold(f.lhs())) return step("constant-folding", f, Formula::member(std::move(*lhs), f.term));
        return std::nullopt;
    }

    std::optional<Formula> atom(const Formula& f) {
        bool changed = false;
        Formula out = f;
        for (auto& a : out.args) {
            if (auto r = fold(a)) {
                a = std::move(*r);
                changed = true;
            }
        }
        if (!changed) return std::nullopt;
        return step("constant-folding", f, std::move(out));
    }

    std::optional<Formula> compare(const Formula& f) {
        {
            bool changed = false;
            Formula out = f;
            for (auto& a : out.args) {
                if (auto r = fold(a)) {
                    a = std::move(*r);
                    changed = true;
                }
            }
            if (changed) return step("constant-folding", f, std::move(out));
        }
        if (precomputed(f.lhs()) && precomputed(f.rhs())) {
            const bool holds_now = holds(f.rel, order_cmp(*as_value(f.lhs()), *as_value(f.rhs())));
            return step("boolean", f, holds_now ? Formula::top() : Formula::bottom());
        }
        // e + d < c  =>  e < c - d, and the mirrored forms.
        for (int side = 0; side < 2; ++side) {
            const Argument& c = f.args[1 - side];
            const Argument& e = f.args[side];
            if (!is_numeral(c) || e.kind != Argument::Kind::Operation) continue;
            if (e.op != Operator::Plus && e.op != Operator::Minus) continue;
            std::optional<std::size_t> constant;
            if (is_numeral(e.args[1])) {
                constant = 1;
            } else if (e.op == Operator::Plus && is_numeral(e.args[0])) {
                constant = 0;
            }
            if (!constant) continue;
            const Argument& rest = e.args[1 - *constant];
            const std::array<std::int64_t, 2> operands{c.number, e.args[*constant].number};
            const Operator inverse = e.op == Operator::Plus ? Operator::Minus : Operator::Plus;
            auto moved = apply_operator(inverse, operands);
            if (!moved) continue;
            Formula out = f;
            out.args[side] = rest;
            out.args[1 - side] = Argument::numeral(*moved);
            return step("linear-bound", f, std::move(out));
        }
        return std::nullopt;
    }

    std::optional<Formula> negation(const Formula& f) {
        const Formula& g = f.child();
        switch (g.kind) {
            case Kind::Top: return step("boolean", f, Formula::bottom());
            case Kind::Bottom: return step("boolean", f, Formula::top());
            case Kind::Not: return step("boolean", f, g.child());
            case Kind::Compare: return step("boolean", f, negate(g));
            case Kind::And: {
                const auto cs = conjuncts(g);
                if (auto i = negatable(cs)) {
                    return step("negated-existential", f, Formula::implies(without(cs, *i), negate(cs[*i])));
                }
                return std::nullopt;
            }
            case Kind::Exists: {
                const auto cs = conjuncts(g.child());
                if (auto i = negatable(cs)) {
                    Formula body = cs.size() == 1 ? negate(cs[*i]) : Formula::implies(without(cs, *i), negate(cs[*i]));
                    return step("negated-existential", f, Formula::forall(g.vars, std::move(body)));
                }
                return std::nullopt;
            }
            default: return std::nullopt;
        }
    }

    std::optional<Formula> connective(const Formula& f) {
        const bool conj = f.kind == Kind::And;
        const Kind unit = conj ? Kind::Top : Kind::Bottom;
        const Kind zero = conj ? Kind::Bottom : Kind::Top;
        std::vector<Formula> out;
        bool changed = false;
        auto add = [&](const Formula& c) {
            if (c.kind == unit || std::find(out.begin(), out.end(), c) != out.end()) {
                changed = true;
                return;
            }
            out.push_back(c);
        };
        for (const auto& c : f.children) {
            if (c.kind == zero) return step("boolean", f, conj ? Formula::bottom() : Formula::top());
            if (c.kind == f.kind) {
                changed = true;
                for (const auto& g : c.children) add(g);
            } else {
                add(c);
            }
        }
        if (out.size() <= 1) changed = true;
        if (!changed) return std::nullopt;
        return step("boolean", f, conj ? Formula::conjunction(std::move(out)) : Formula::disjunction(std::move(out)));
    }

    std::optional<Formula> implication(const Formula& f) {
        const Formula& a = f.child(0);
        const Formula& b = f.child(1);
        if (a.kind == Kind::Bottom || b.kind == Kind::Top) return step("boolean", f, Formula::top());
        if (a.kind == Kind::Top) return step("boolean", f, b);
        if (b.kind == Kind::Bottom) return step("boolean", f, Formula::negation(a));
        return std::nullopt;
    }

    std::optional<Formula> equivalence(const Formula& f) {
        const Formula& head = f.child(0);
        if (head.kind != Kind::Atom) return std::nullopt;
        const auto cs = conjuncts(f.child(1));
        if (f.child(1).kind == Kind::Top) return std::nullopt;
        auto it = std::find(cs.begin(), cs.end(), head);
        if (it == cs.end()) return std::nullopt;
        return step("choice-definition", f,
                    Formula::implies(head, without(cs, static_cast<std::size_t>(it - cs.begin()))));
    }

    std::optional<Formula> quantified(const Formula& f) {
        const Formula& body = f.child();
        if (body.kind == f.kind) {
            const bool overlap = std::any_of(body.vars.begin(), body.vars.end(), [&](const Variable& v) {
                return std::any_of(f.vars.begin(), f.vars.end(), [&](const Variable& w) { return w.name == v.name; });
            });
            if (!overlap) {
                std::vector<Variable> vars = f.vars;
                vars.insert(vars.end(), body.vars.begin(), body.vars.end());
                return step("boolean", f, quantifier(f.kind, std::move(vars), body.child()));
            }
        }
        {
            std::vector<Variable> used;
            for (std::size_t i = 0; i < f.vars.size(); ++i) {
                const auto& v = f.vars[i];
                const bool shadowed = std::any_of(f.vars.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.vars.end(),
                                                  [&](const Variable& w) { return w.name == v.name; });
                if (!shadowed && occurs_free(v.name, body)) used.push_back(v);
            }
            if (used.size() != f.vars.size()) {
                return step("unused-quantifier", f, quantifier(f.kind, std::move(used), body));
            }
        }
        if (f.kind == Kind::Exists) {
            if (auto r = eliminate(f.vars, conjuncts(body), [](Formula rest) { return rest; })) {
                return step("binding", f, Formula::exists(std::move(r->first), std::move(r->second)));
            }
            return std::nullopt;
        }
        if (body.kind == Kind::Implies) {
            const Formula consequent = body.child(1);
            auto rebuild = [&](Formula rest) { return Formula::implies(std::move(rest), consequent); };
            if (auto r = eliminate(f.vars, conjuncts(body.child(0)), rebuild)) {
                return step("binding", f, Formula::forall(std::move(r->first), std::move(r->second)));
            }
            return std::nullopt;
        }
        if (body.kind == Kind::Not) {
            return step("negated-existential", f, Formula::negation(Formula::exists(f.vars, body.child())));
        }
        return std::nullopt;
    }

    // The value the equality `eq` gives to the variable v, if it solves for it.
    static std::optional<Argument> solve(const Formula& eq, const Variable& v) {
        if (eq.kind != Kind::Compare || eq.rel != Relation::Eq) return std::nullopt;
        for (int side = 0; side < 2; ++side) {
            const Argument& x = eq.args[side];
            const Argument& a = eq.args[1 - side];
            if (occurs_free(v.name, a)) continue;
            if (x.is_variable() && x.name == v.name && x.sort == v.sort) {
                if (v.is_integer() && !a.is_integer_argument()) continue;
                return a;
            }
            // N = X + c  =>  X = N - c, for integer X.
            if (!v.is_integer() || !a.is_integer_argument() || x.kind != Argument::Kind::Operation) continue;
            if (x.op != Operator::Plus && x.op != Operator::Minus) continue;
            auto is_v = [&](const Argument& y) { return y.is_variable() && y.name == v.name && y.sort == v.sort; };
            if (is_v(x.args[0]) && is_numeral(x.args[1])) {
                const Operator inverse = x.op == Operator::Plus ? Operator::Minus : Operator::Plus;
                return Argument::operation(inverse, {a, x.args[1]});
            }
            if (x.op == Operator::Plus && is_numeral(x.args[0]) && is_v(x.args[1])) {
                return Argument::operation(Operator::Minus, {a, x.args[0]});
            }
        }
        return std::nullopt;
    }

    template <typename Rebuild>
    static std::optional<std::pair<std::vector<Variable>, Formula>> eliminate(const std::vector<Variable>& vars,
                                                                              const std::vector<Formula>& cs,
                                                                              Rebuild&& rebuild) {
        for (std::size_t k = 0; k < vars.size(); ++k) {
            for (std::size_t i = 0; i < cs.size(); ++i) {
                auto value = solve(cs[i], vars[k]);
                if (!value) continue;
                auto rest = substitute(rebuild(without(cs, i)), vars[k].name, *value);
                if (!rest) continue;
                std::vector<Variable> remaining = vars;
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
                return std::make_pair(std::move(remaining), std::move(*rest));
            }
        }
        return std::nullopt;
    }

    const SimplifyOptions& options_;
    std::vector<Variable> scope_;
    RewriteTrace trace_;
    bool changed_ = false;
};

}  // namespace

SimplifyResult simplify(const Formula& f, const SimplifyOptions& options) {
    Simplifier s(options);
    return s.run(f);
}

CompletionResult simplify(const CompletionResult& completion, const SimplifyOptions& options, RewriteTrace* trace) {
    CompletionResult out = completion;
    auto run = [&](Formula& f) {
        SimplifyResult r = simplify(f, options);
        f = std::move(r.formula);
        if (trace) trace->insert(trace->end(), r.trace.begin(), r.trace.end());
    };
    for (auto& d : out.definitions) run(d.formula);
    for (auto& c : out.constraints) run(c);
    return out;
}

std::string to_string(const RewriteTrace& trace, const RenderOptions& options) {
    std::ostringstream out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << i + 1 << ". [" << trace[i].rule << "] " << to_string(trace[i].before, options) << "\n   => "
            << to_string(trace[i].after, options) << "\n";
    }
    return out.str();
}

}  // namespace eg
