#include "eg/evaluate.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace eg {

void EvalDomain::complete() {
    general.push_back(Value::inf());
    general.push_back(Value::sup());
    for (std::int64_t n = int_lo; n <= int_hi; ++n) general.push_back(Value::numeral(n));
    normalize(general);
}

Truth truth_not(Truth t) {
    switch (t) {
        case Truth::False: return Truth::True;
        case Truth::True: return Truth::False;
        default: return Truth::Unknown;
    }
}

Truth truth_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}

Truth truth_or(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::False && b == Truth::False) return Truth::False;
    return Truth::Unknown;
}

namespace {

constexpr std::size_t kMaxRange = 1'000'000;

void unite(ValueSet& into, const ValueSet& from) {
    ValueSet out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
}

void intersect(ValueSet& into, const ValueSet& from) {
    ValueSet out;
    std::set_intersection(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
}

using Cands = std::optional<ValueSet>;

class Evaluator {
public:
    Evaluator(const Interpretation& certain, const Interpretation& possible, const EvalDomain& domain,
              Interpretation* consulted = nullptr)
        : certain_(certain), possible_(possible), domain_(domain), consulted_(consulted) {}

    bool approximated() const { return approximated_; }

    Truth eval(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Atom: {
                GroundAtom atom;
                atom.predicate = f.predicate;
                for (const auto& a : f.args) {
                    auto v = value(a, true);
                    if (!v) return Truth::Unknown;
                    atom.args.push_back(std::move(*v));
                }
                if (consulted_ != nullptr) consulted_->insert(atom);
                if (certain_.count(atom) != 0) return Truth::True;
                if (&certain_ != &possible_ && possible_.count(atom) != 0) return Truth::Unknown;
                return Truth::False;
            }
            case Formula::Kind::Compare: {
                auto a = value(f.args[0], true);
                auto b = value(f.args[1], true);
                if (!a || !b) return compare_with_range(f);
                return holds(f.rel, order_cmp(*a, *b)) ? Truth::True : Truth::False;
            }
            case Formula::Kind::Member: {
                auto a = value(f.args[0], true);
                if (!a) return Truth::Unknown;
                auto t = ground(f.term);
                if (!t) throw std::invalid_argument("formula is not closed: " + to_string(f));
                return contains(eval_term(*t), *a) ? Truth::True : Truth::False;
            }
            case Formula::Kind::Bottom: return Truth::False;
            case Formula::Kind::Top: return Truth::True;
            case Formula::Kind::Not: return truth_not(eval(f.children[0]));
            case Formula::Kind::And: {
                Truth acc = Truth::True;
                for (const auto& c : f.children) {
                    acc = truth_and(acc, eval(c));
                    if (acc == Truth::False) break;
                }
                return acc;
            }
            case Formula::Kind::Or: {
                Truth acc = Truth::False;
                for (const auto& c : f.children) {
                    acc = truth_or(acc, eval(c));
                    if (acc == Truth::True) break;
                }
                return acc;
            }
            case Formula::Kind::Implies: {
                Truth a = eval(f.children[0]);
                if (a == Truth::False) return Truth::True;
                return truth_or(truth_not(a), eval(f.children[1]));
            }
            case Formula::Kind::Iff: {
                Truth a = eval(f.children[0]);
                if (a == Truth::Unknown) return Truth::Unknown;
                Truth b = eval(f.children[1]);
                if (b == Truth::Unknown) return Truth::Unknown;
                return a == b ? Truth::True : Truth::False;
            }
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                std::vector<const Variable*> block;
                for (const auto& v : f.vars) block.push_back(&v);
                return quantify(block, f.children[0], f.kind == Formula::Kind::Exists);
            }
        }
        return Truth::False;
    }

    // strict: every free variable must be bound (closed evaluation).
    // Non-strict: nullopt when some variable is unbound.
    std::optional<Value> value(const Argument& a, bool strict) {
        switch (a.kind) {
            case Argument::Kind::Numeral: return Value::numeral(a.number);
            case Argument::Kind::Symbol: return Value::symbol(a.name);
            case Argument::Kind::Inf: return Value::inf();
            case Argument::Kind::Sup: return Value::sup();
            case Argument::Kind::Variable: {
                if (const Value* v = lookup(a.name)) return *v;
                if (strict) throw std::invalid_argument("unbound variable " + a.name);
                return std::nullopt;
            }
            case Argument::Kind::Function: {
                std::vector<Value> args;
                for (const auto& x : a.args) {
                    auto v = value(x, strict);
                    if (!v) return std::nullopt;
                    args.push_back(std::move(*v));
                }
                return Value::function(a.name, std::move(args));
            }
            case Argument::Kind::Operation: {
                std::vector<std::int64_t> operands;
                for (const auto& x : a.args) {
                    auto v = value(x, strict);
                    if (!v) return std::nullopt;
                    if (!v->is_numeral()) throw std::invalid_argument("integer operation applied to " + to_string(*v));
                    operands.push_back(v->number);
                }
                auto r = apply_operator(a.op, operands);
                if (!r) throw ResourceError("integer overflow while evaluating " + to_string(a));
                return Value::numeral(*r);
            }
            case Argument::Kind::Aggregate: {
                if (!strict && !all_bound(free_variables(a))) return std::nullopt;
                // nullopt when the value differs between interpretations in range
                return aggregate(a);
            }
        }
        return std::nullopt;
    }

private:
    struct Binding {
        std::string name;
        std::optional<Value> value;
    };

    const Value* lookup(const std::string& name) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
            if (it->name == name) return it->value ? &*it->value : nullptr;
        }
        return nullptr;
    }

    bool all_bound(const std::vector<Variable>& vars) const {
        return std::all_of(vars.begin(), vars.end(), [&](const Variable& v) { return lookup(v.name) != nullptr; });
    }

    class Scope {
    public:
        explicit Scope(std::vector<Binding>& env) : env_(env), size_(env.size()) {}
        ~Scope() { env_.resize(size_); }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        std::vector<Binding>& env_;
        std::size_t size_;
    };

    void mask(const std::vector<const Variable*>& block) {
        for (const Variable* v : block) env_.push_back({v->name, std::nullopt});
    }

    std::optional<Term> ground(const Term& t) const {
        if (t.kind == Term::Kind::Variable) {
            const Value* v = lookup(t.name);
            if (!v) return std::nullopt;
            return to_term(*v);
        }
        if (t.args.empty()) return t;
        Term out = t;
        for (auto& a : out.args) {
            auto g = ground(a);
            if (!g) return std::nullopt;
            a = std::move(*g);
        }
        return out;
    }

    ValueSet fallback_domain(const Variable& v) {
        approximated_ = true;
        if (!v.is_integer()) return domain_.general;
        ValueSet out;
        for (std::int64_t n = domain_.int_lo; n <= domain_.int_hi; ++n) out.push_back(Value::numeral(n));
        return out;
    }

    static void restrict_sort(const Variable& v, ValueSet& s) {
        if (!v.is_integer()) return;
        s.erase(std::remove_if(s.begin(), s.end(), [](const Value& x) { return !x.is_numeral(); }), s.end());
    }

    static std::vector<const Variable*> without(const std::vector<const Variable*>& block, std::size_t i) {
        std::vector<const Variable*> rest;
        for (std::size_t j = 0; j < block.size(); ++j) {
            if (j != i) rest.push_back(block[j]);
        }
        return rest;
    }

    // Picks the block variable to enumerate next together with its candidates.
    std::pair<std::size_t, ValueSet> choose(const std::vector<const Variable*>& block, const Formula& body, bool ex) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (!occurs_free(block[i]->name, body)) continue;
            Scope scope(env_);
            mask(block);
            if (auto s = cands_block(without(block, i), body, ex, block[i]->name, ex)) {
                restrict_sort(*block[i], *s);
                return {i, std::move(*s)};
            }
        }
        std::size_t i = 0;
        while (i < block.size() && !occurs_free(block[i]->name, body)) ++i;
        return {i, fallback_domain(*block[i])};
    }

    Truth quantify(std::vector<const Variable*> block, const Formula& body, bool ex) {
        // Variables without free occurrences range over a non-empty domain and can be dropped.
        block.erase(std::remove_if(block.begin(), block.end(),
                                   [&](const Variable* v) { return !occurs_free(v->name, body); }),
                    block.end());
        if (block.empty()) {
            Scope scope(env_);
            return eval(body);
        }
        auto [i, values] = choose(block, body, ex);
        const auto rest = without(block, i);
        Truth acc = ex ? Truth::False : Truth::True;
        for (const auto& r : values) {
            Scope scope(env_);
            mask(rest);
            env_.push_back({block[i]->name, r});
            const Truth t = quantify(rest, body, ex);
            acc = ex ? truth_or(acc, t) : truth_and(acc, t);
            if (acc == (ex ? Truth::True : Truth::False)) break;
        }
        return acc;
    }

    std::optional<Value> aggregate(const Argument& a) {
        const auto [lo, hi] = aggregate_range(a);
        if (lo != hi) return std::nullopt;
        return Value::numeral(lo);
    }

    // Least and greatest value the aggregate takes over the interpretations in range.
    std::pair<std::int64_t, std::int64_t> aggregate_range(const Argument& a) {
        std::vector<const Variable*> block;
        for (const auto& v : a.bound) block.push_back(&v);
        std::vector<ValueTuple> certain;
        std::vector<ValueTuple> possible;
        ValueTuple tuple(block.size());
        collect_rec(block, a.condition(), tuple, block, certain, possible);
        if (a.function == AggregateFunction::Count) {
            return {static_cast<std::int64_t>(certain.size()), static_cast<std::int64_t>(possible.size())};
        }
        std::sort(certain.begin(), certain.end());
        std::int64_t lo = 0;
        std::int64_t hi = 0;
        auto add = [](std::int64_t& acc, std::int64_t w) {
            if (__builtin_add_overflow(acc, w, &acc)) throw ResourceError("integer overflow in sum aggregate");
        };
        for (const auto& t : possible) {
            if (!t.front().is_numeral()) continue;
            const std::int64_t w = t.front().number;
            if (std::binary_search(certain.begin(), certain.end(), t)) {
                add(lo, w);
                add(hi, w);
            } else {
                add(w < 0 ? lo : hi, w);
            }
        }
        return {lo, hi};
    }

    // Truth of n rel v for every n in [lo, hi].
    static Truth range_compare(std::int64_t lo, std::int64_t hi, Relation rel, const Value& v) {
        const bool at_lo = holds(rel, order_cmp(Value::numeral(lo), v));
        const bool at_hi = holds(rel, order_cmp(Value::numeral(hi), v));
        if (rel == Relation::Eq || rel == Relation::Ne) {
            const bool inside = v.is_numeral() && lo <= v.number && v.number <= hi;
            if (!inside) return rel == Relation::Eq ? Truth::False : Truth::True;
            if (lo == hi) return at_lo ? Truth::True : Truth::False;
            return Truth::Unknown;
        }
        if (at_lo == at_hi) return at_lo ? Truth::True : Truth::False;
        return Truth::Unknown;
    }

    Truth compare_with_range(const Formula& f) {
        for (int side = 0; side < 2; ++side) {
            const Argument& agg = f.args[side];
            if (agg.kind != Argument::Kind::Aggregate) continue;
            auto other = value(f.args[1 - side], true);
            if (!other) return Truth::Unknown;
            const auto [lo, hi] = aggregate_range(agg);
            return range_compare(lo, hi, side == 0 ? f.rel : converse(f.rel), *other);
        }
        return Truth::Unknown;
    }

    // Enumerates assignments to the aggregate tuple variables.
    void collect_rec(const std::vector<const Variable*>& remaining, const Formula& body, ValueTuple& tuple,
                     const std::vector<const Variable*>& all, std::vector<ValueTuple>& certain,
                     std::vector<ValueTuple>& possible) {
        if (remaining.empty()) {
            Scope scope(env_);
            const Truth t = eval(body);
            if (t != Truth::False) possible.push_back(tuple);
            if (t == Truth::True) certain.push_back(tuple);
            return;
        }
        std::size_t pick = 0;
        ValueSet values;
        bool found = false;
        for (std::size_t i = 0; i < remaining.size() && !found; ++i) {
            Scope scope(env_);
            mask(remaining);
            if (!occurs_free(remaining[i]->name, body)) continue;
            if (auto s = cands_block(without(remaining, i), body, true, remaining[i]->name, true)) {
                restrict_sort(*remaining[i], *s);
                pick = i;
                values = std::move(*s);
                found = true;
            }
        }
        if (!found) {
            pick = 0;
            values = fallback_domain(*remaining[0]);
        }
        const std::size_t slot =
            static_cast<std::size_t>(std::find(all.begin(), all.end(), remaining[pick]) - all.begin());
        const auto rest = without(remaining, pick);
        for (const auto& r : values) {
            Scope scope(env_);
            mask(rest);
            env_.push_back({remaining[pick]->name, r});
            tuple[slot] = r;
            collect_rec(rest, body, tuple, all, certain, possible);
        }
    }

    // ---- candidate generation ------------------------------------------
    //
    // cands(F, X, pos) returns S such that for every value r outside S and
    // every interpretation between certain and possible, F with X := r is
    // false (pos) or true (!pos). Unbound variables other than X act as
    // wildcards, so the result holds for all their values.

    enum class Match : std::uint8_t { Fail, Ok };

    // Structural match of an argument pattern against a value, binding X.
    Match match(const Argument& p, const Value& v, const std::string& x, std::optional<Value>& xval) {
        switch (p.kind) {
            case Argument::Kind::Variable: {
                if (p.name == x && lookup(x) == nullptr) {
                    if (xval) return *xval == v ? Match::Ok : Match::Fail;
                    xval = v;
                    return Match::Ok;
                }
                const Value* bound = lookup(p.name);
                if (!bound) return Match::Ok;
                return *bound == v ? Match::Ok : Match::Fail;
            }
            case Argument::Kind::Function: {
                if (v.kind != Value::Kind::Function || v.name != p.name || v.args.size() != p.args.size()) {
                    return Match::Fail;
                }
                for (std::size_t i = 0; i < p.args.size(); ++i) {
                    if (match(p.args[i], v.args[i], x, xval) == Match::Fail) return Match::Fail;
                }
                return Match::Ok;
            }
            case Argument::Kind::Operation:
            case Argument::Kind::Aggregate: {
                auto pv = try_value(p);
                if (!pv) return Match::Ok;
                return *pv == v ? Match::Ok : Match::Fail;
            }
            default: {
                auto pv = value(p, false);
                return *pv == v ? Match::Ok : Match::Fail;
            }
        }
    }

    std::optional<Value> try_value(const Argument& a) { return value(a, false); }

    // X occurs in the pattern along a path of function symbols only.
    static bool structural(const Argument& p, const std::string& x) {
        if (p.kind == Argument::Kind::Variable) return p.name == x;
        if (p.kind != Argument::Kind::Function) return false;
        return std::any_of(p.args.begin(), p.args.end(), [&](const Argument& a) { return structural(a, x); });
    }

    Cands cands(const Formula& f, const std::string& x, bool pos) {
        switch (f.kind) {
            case Formula::Kind::Bottom: return pos ? Cands(ValueSet{}) : std::nullopt;
            case Formula::Kind::Top: return pos ? std::nullopt : Cands(ValueSet{});
            default: break;
        }
        if (!occurs_free(x, f)) return std::nullopt;
        switch (f.kind) {
            case Formula::Kind::Atom: {
                if (!pos) return std::nullopt;
                if (std::none_of(f.args.begin(), f.args.end(), [&](const Argument& a) { return structural(a, x); })) {
                    return std::nullopt;
                }
                ValueSet out;
                GroundAtom key{f.predicate, {}};
                for (auto it = possible_.lower_bound(key); it != possible_.end() && it->predicate == f.predicate; ++it) {
                    if (consulted_ != nullptr) consulted_->insert(*it);
                    if (it->args.size() != f.args.size()) continue;
                    std::optional<Value> xval;
                    bool ok = true;
                    for (std::size_t i = 0; i < f.args.size() && ok; ++i) {
                        ok = match(f.args[i], it->args[i], x, xval) == Match::Ok;
                    }
                    if (ok && xval) out.push_back(*xval);
                }
                normalize(out);
                return out;
            }
            case Formula::Kind::Compare: {
                const bool eq = (pos && f.rel == Relation::Eq) || (!pos && f.rel == Relation::Ne);
                if (!eq) return std::nullopt;
                for (int side = 0; side < 2; ++side) {
                    const Argument& pattern = f.args[side];
                    const Argument& other = f.args[1 - side];
                    if (!structural(pattern, x) || occurs_free(x, other)) continue;
                    auto v = try_value(other);
                    if (!v) continue;
                    std::optional<Value> xval;
                    if (match(pattern, *v, x, xval) == Match::Fail) return ValueSet{};
                    if (xval) return ValueSet{*xval};
                }
                return std::nullopt;
            }
            case Formula::Kind::Member: {
                if (!pos) return std::nullopt;
                const Argument& lhs = f.args[0];
                if (structural(lhs, x)) {
                    auto t = ground(f.term);
                    if (t) {
                        ValueSet out;
                        for (const auto& v : eval_term(*t)) {
                            std::optional<Value> xval;
                            if (match(lhs, v, x, xval) == Match::Ok && xval) out.push_back(*xval);
                        }
                        normalize(out);
                        return out;
                    }
                }
                if (f.term.kind == Term::Kind::Variable && f.term.name == x && !occurs_free(x, lhs)) {
                    if (auto v = try_value(lhs)) return ValueSet{*v};
                }
                return std::nullopt;
            }
            case Formula::Kind::Not: return cands(f.children[0], x, !pos);
            case Formula::Kind::And: return pos ? meet(f.children, x, true, &f) : join(f.children, x, false);
            case Formula::Kind::Or: return pos ? join(f.children, x, true) : meet(f.children, x, false, nullptr);
            case Formula::Kind::Implies: {
                if (pos) {
                    auto a = cands(f.children[0], x, false);
                    if (!a) return std::nullopt;
                    auto b = cands(f.children[1], x, true);
                    if (!b) return std::nullopt;
                    unite(*a, *b);
                    return a;
                }
                auto a = cands(f.children[0], x, true);
                auto b = cands(f.children[1], x, false);
                if (a && b) intersect(*a, *b);
                return a ? a : b;
            }
            case Formula::Kind::Iff: {
                if (pos) return std::nullopt;
                for (bool side : {true, false}) {
                    auto a = cands(f.children[0], x, side);
                    if (!a) continue;
                    auto b = cands(f.children[1], x, side);
                    if (!b) continue;
                    unite(*a, *b);
                    return a;
                }
                return std::nullopt;
            }
            case Formula::Kind::Exists:
            case Formula::Kind::Forall: {
                const bool ex = f.kind == Formula::Kind::Exists;
                if (ex != pos) return std::nullopt;
                std::vector<const Variable*> block;
                for (const auto& v : f.vars) block.push_back(&v);
                Scope scope(env_);
                mask(block);
                return cands_block(block, f.children[0], ex, x, pos);
            }
            default: return std::nullopt;
        }
    }

    // pos && ex: "exists block. body" is false outside the result;
    // !pos && !ex: "forall block. body" is true outside the result.
    Cands cands_block(const std::vector<const Variable*>& block, const Formula& body, bool ex, const std::string& x,
                      bool pos) {
        if (block.empty()) return cands(body, x, pos);
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (!occurs_free(block[i]->name, body)) continue;
            const auto rest = without(block, i);
            Cands ys;
            {
                Scope scope(env_);
                mask(block);
                ys = cands_block(rest, body, ex, block[i]->name, pos);
            }
            if (!ys) continue;
            restrict_sort(*block[i], *ys);
            ValueSet out;
            for (const auto& y : *ys) {
                Scope scope(env_);
                mask(rest);
                env_.push_back({block[i]->name, y});
                auto r = cands_block(rest, body, ex, x, pos);
                if (!r) return std::nullopt;
                unite(out, *r);
            }
            return out;
        }
        // No block variable is restricted; drop the unused ones and retry.
        std::vector<const Variable*> used;
        for (const Variable* v : block) {
            if (occurs_free(v->name, body)) used.push_back(v);
        }
        if (used.empty()) return cands(body, x, pos);
        return std::nullopt;
    }

    // Some child alone suffices: intersect those that give candidates.
    // For conjunctions (false outside), numeric bounds on X also count.
    Cands meet(const std::vector<Formula>& children, const std::string& x, bool pos, const Formula* conj) {
        Cands acc;
        for (const auto& c : children) {
            auto s = cands(c, x, pos);
            if (!s) continue;
            if (acc) {
                intersect(*acc, *s);
            } else {
                acc = std::move(s);
            }
            if (acc->empty()) return acc;
        }
        if (conj != nullptr) {
            if (auto range = bounds(children, x)) {
                if (acc) {
                    intersect(*acc, *range);
                } else {
                    acc = std::move(range);
                }
            }
        }
        return acc;
    }

    // Every child must give candidates: unite them.
    Cands join(const std::vector<Formula>& children, const std::string& x, bool pos) {
        ValueSet acc;
        for (const auto& c : children) {
            if (!occurs_free(x, c)) {
                // A child not mentioning X is constant in X; only a constant
                // of the right polarity can be ignored.
                if ((pos && c.kind == Formula::Kind::Bottom) || (!pos && c.kind == Formula::Kind::Top)) continue;
                return std::nullopt;
            }
            auto s = cands(c, x, pos);
            if (!s) return std::nullopt;
            unite(acc, *s);
        }
        return acc;
    }

    // lo <= X <= hi from comparison conjuncts with numeral bounds.
    Cands bounds(const std::vector<Formula>& children, const std::string& x) {
        std::optional<std::int64_t> lo;
        std::optional<std::int64_t> hi;
        for (const auto& c : children) {
            if (c.kind != Formula::Kind::Compare) continue;
            Relation rel = c.rel;
            const Argument* var = &c.args[0];
            const Argument* other = &c.args[1];
            if (!(var->is_variable() && var->name == x)) {
                std::swap(var, other);
                rel = converse(rel);
            }
            if (!(var->is_variable() && var->name == x) || occurs_free(x, *other)) continue;
            auto v = try_value(*other);
            if (!v || !v->is_numeral()) continue;
            const std::int64_t n = v->number;
            auto raise = [&](std::int64_t b) { lo = lo ? std::max(*lo, b) : b; };
            auto lower = [&](std::int64_t b) { hi = hi ? std::min(*hi, b) : b; };
            switch (rel) {
                case Relation::Ge: raise(n); break;
                case Relation::Gt:
                    if (n == std::numeric_limits<std::int64_t>::max()) return ValueSet{};
                    raise(n + 1);
                    break;
                case Relation::Le: lower(n); break;
                case Relation::Lt:
                    if (n == std::numeric_limits<std::int64_t>::min()) return ValueSet{};
                    lower(n - 1);
                    break;
                default: break;
            }
        }
        // Between two numerals the order admits only numerals.
        if (!lo || !hi) return std::nullopt;
        if (*lo > *hi) return ValueSet{};
        if (static_cast<std::uint64_t>(*hi) - static_cast<std::uint64_t>(*lo) >= kMaxRange) return std::nullopt;
        ValueSet out;
        for (std::int64_t n = *lo;; ++n) {
            out.push_back(Value::numeral(n));
            if (n == *hi) break;
        }
        return out;
    }

    const Interpretation& certain_;
    const Interpretation& possible_;
    const EvalDomain& domain_;
    Interpretation* consulted_;
    std::vector<Binding> env_;
    bool approximated_ = false;
};

void collect_argument_constants(const Argument& a, ValueSet& out) {
    if (a.kind == Argument::Kind::Aggregate) {
        collect_constants(a.condition(), out);
        return;
    }
    if (!a.contains_aggregate() && a.kind != Argument::Kind::Operation) {
        if (auto t = to_term(a)) {
            if (auto v = to_value(*t)) out.push_back(*v);
        }
    }
    for (const auto& x : a.args) collect_argument_constants(x, out);
}

void collect_term_constants(const Term& t, ValueSet& out) {
    if (auto v = to_value(t)) out.push_back(*v);
    for (const auto& x : t.args) collect_term_constants(x, out);
}

void collect_value_parts(const Value& v, ValueSet& out) {
    out.push_back(v);
    for (const auto& x : v.args) collect_value_parts(x, out);
}

}  // namespace

void collect_constants(const Formula& f, ValueSet& out) {
    for (const auto& a : f.args) collect_argument_constants(a, out);
    if (f.kind == Formula::Kind::Member) collect_term_constants(f.term, out);
    for (const auto& c : f.children) collect_constants(c, out);
}

EvalDomain default_domain(const std::vector<Formula>& formulas, const Interpretation& interp, std::int64_t int_lo,
                          std::int64_t int_hi) {
    EvalDomain d;
    d.int_lo = int_lo;
    d.int_hi = int_hi;
    for (const auto& f : formulas) collect_constants(f, d.general);
    for (const auto& atom : interp) {
        for (const auto& v : atom.args) collect_value_parts(v, d.general);
    }
    d.complete();
    return d;
}

EvalResult evaluate(const Formula& f, const Interpretation& certain, const Interpretation& possible,
                    const EvalDomain& domain, Interpretation* consulted) {
    Evaluator ev(certain, possible, domain, consulted);
    Truth t = ev.eval(f);
    return {t, ev.approximated()};
}

SatResult satisfies(const Formula& f, const Interpretation& interp, const EvalDomain& domain) {
    Evaluator ev(interp, interp, domain);
    const Truth t = ev.eval(f);
    if (t == Truth::Unknown) throw std::logic_error("two-valued evaluation produced an unknown value");
    return {t == Truth::True, ev.approximated()};
}

std::optional<Value> eval_argument(const Argument& a, const Interpretation& interp, const EvalDomain& domain,
                                   bool* approximated) {
    Evaluator ev(interp, interp, domain);
    auto v = ev.value(a, true);
    if (approximated != nullptr) *approximated = ev.approximated();
    return v;
}

}  // namespace eg
