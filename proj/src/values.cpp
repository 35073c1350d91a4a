#include "eg/values.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

namespace eg {

Value Value::inf() {
    Value v;
    v.kind = Kind::Inf;
    return v;
}

Value Value::sup() {
    Value v;
    v.kind = Kind::Sup;
    return v;
}

Value Value::numeral(std::int64_t n) {
    Value v;
    v.kind = Kind::Numeral;
    v.number = n;
    return v;
}

Value Value::symbol(std::string name) {
    Value v;
    v.kind = Kind::Symbol;
    v.name = std::move(name);
    return v;
}

Value Value::function(std::string name, std::vector<Value> args) {
    if (args.empty()) throw std::invalid_argument("function value " + name + " needs at least one argument");
    Value v;
    v.kind = Kind::Function;
    v.name = std::move(name);
    v.args = std::move(args);
    return v;
}

bool Value::operator==(const Value& other) const { return order_cmp(*this, other) == 0; }

std::strong_ordering order_cmp(const Value& a, const Value& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    switch (a.kind) {
        case Value::Kind::Inf:
        case Value::Kind::Sup: return std::strong_ordering::equal;
        case Value::Kind::Numeral: return a.number <=> b.number;
        case Value::Kind::Symbol: return a.name.compare(b.name) <=> 0;
        case Value::Kind::Function: {
            if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
            if (auto c = a.name.compare(b.name) <=> 0; c != 0) return c;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (auto c = order_cmp(a.args[i], b.args[i]); c != 0) return c;
            }
            return std::strong_ordering::equal;
        }
    }
    return std::strong_ordering::equal;
}

std::string to_string(const Value& v) { return to_string(to_term(v)); }

std::ostream& operator<<(std::ostream& out, const Value& v) { return out << to_string(v); }

Term to_term(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Inf: return Term::inf();
        case Value::Kind::Sup: return Term::sup();
        case Value::Kind::Numeral: return Term::numeral(v.number);
        case Value::Kind::Symbol: return Term::symbol(v.name);
        case Value::Kind::Function: {
            std::vector<Term> args;
            args.reserve(v.args.size());
            for (const auto& a : v.args) args.push_back(to_term(a));
            return Term::function(v.name, std::move(args));
        }
    }
    return Term::inf();
}

std::optional<Value> to_value(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Inf: return Value::inf();
        case Term::Kind::Sup: return Value::sup();
        case Term::Kind::Numeral: return Value::numeral(t.number);
        case Term::Kind::Symbol: return Value::symbol(t.name);
        case Term::Kind::Function: {
            std::vector<Value> args;
            for (const auto& a : t.args) {
                auto v = to_value(a);
                if (!v) return std::nullopt;
                args.push_back(std::move(*v));
            }
            return Value::function(t.name, std::move(args));
        }
        default: return std::nullopt;
    }
}

bool contains(const ValueSet& set, const Value& v) { return std::binary_search(set.begin(), set.end(), v); }

void normalize(ValueSet& set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
}

std::optional<std::int64_t> apply_operator(Operator op, std::span<const std::int64_t> x) {
    using Limits = std::numeric_limits<std::int64_t>;
    std::int64_t r = 0;
    switch (op) {
        case Operator::Plus:
            if (__builtin_add_overflow(x[0], x[1], &r)) return std::nullopt;
            return r;
        case Operator::Minus:
            if (__builtin_sub_overflow(x[0], x[1], &r)) return std::nullopt;
            return r;
        case Operator::Times:
            if (__builtin_mul_overflow(x[0], x[1], &r)) return std::nullopt;
            return r;
        case Operator::Divide:
            if (x[1] == 0 || (x[0] == Limits::min() && x[1] == -1)) return std::nullopt;
            return x[0] / x[1];
        case Operator::Modulo:
            if (x[1] == 0) return std::nullopt;
            if (x[1] == -1) return 0;
            return x[0] % x[1];
        case Operator::Power: {
            if (x[1] < 0) return std::nullopt;
            std::int64_t result = 1;
            std::int64_t base = x[0];
            std::int64_t exp = x[1];
            while (exp > 0) {
                if (exp & 1) {
                    if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
                }
                exp >>= 1;
                if (exp > 0 && __builtin_mul_overflow(base, base, &base)) return std::nullopt;
            }
            return result;
        }
        case Operator::Negate:
            if (x[0] == Limits::min()) return std::nullopt;
            return -x[0];
        case Operator::Absolute:
            if (x[0] == Limits::min()) return std::nullopt;
            return x[0] < 0 ? -x[0] : x[0];
    }
    return std::nullopt;
}

namespace {

void check_size(std::size_t n, const EvalLimits& limits) {
    if (n > limits.max_values) {
        throw ResourceError("value set exceeds the limit of " + std::to_string(limits.max_values) + " elements");
    }
}

std::vector<std::int64_t> numerals_of(const ValueSet& set) {
    std::vector<std::int64_t> out;
    for (const auto& v : set) {
        if (v.is_numeral()) out.push_back(v.number);
    }
    return out;
}

template <typename Fn>
void for_each_product(const std::vector<std::vector<std::int64_t>>& factors, Fn&& fn) {
    if (std::any_of(factors.begin(), factors.end(), [](const auto& f) { return f.empty(); })) return;
    std::vector<std::size_t> idx(factors.size(), 0);
    std::vector<std::int64_t> current(factors.size());
    for (;;) {
        for (std::size_t i = 0; i < factors.size(); ++i) current[i] = factors[i][idx[i]];
        fn(current);
        std::size_t i = factors.size();
        while (i > 0) {
            --i;
            if (++idx[i] < factors[i].size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (factors.empty()) return;
    }
}

}  // namespace

ValueSet eval_term(const Term& t, const EvalLimits& limits) {
    switch (t.kind) {
        case Term::Kind::Variable: throw std::invalid_argument("cannot evaluate non-ground term " + to_string(t));
        case Term::Kind::Numeral:
        case Term::Kind::Symbol:
        case Term::Kind::Inf:
        case Term::Kind::Sup: return {*to_value(t)};
        case Term::Kind::Function: {
            std::vector<Term> args = t.args;
            ValueSet out;
            for (auto& tuple : eval_term_tuple(args, limits)) out.push_back(Value::function(t.name, std::move(tuple)));
            normalize(out);
            return out;
        }
        case Term::Kind::Interval: {
            const auto lo = numerals_of(eval_term(t.args[0], limits));
            const auto hi = numerals_of(eval_term(t.args[1], limits));
            if (lo.empty() || hi.empty()) return {};
            const std::int64_t from = *std::min_element(lo.begin(), lo.end());
            const std::int64_t to = *std::max_element(hi.begin(), hi.end());
            if (from > to) return {};
            // to >= from, so the unsigned difference is exact
            const std::uint64_t span = static_cast<std::uint64_t>(to) - static_cast<std::uint64_t>(from);
            if (span >= limits.max_values) check_size(limits.max_values + 1, limits);
            ValueSet out;
            out.reserve(static_cast<std::size_t>(span) + 1);
            for (std::int64_t m = from;; ++m) {
                out.push_back(Value::numeral(m));
                if (m == to) break;
            }
            return out;
        }
        case Term::Kind::Operation: {
            std::vector<std::vector<std::int64_t>> factors;
            std::size_t product = 1;
            for (const auto& a : t.args) {
                factors.push_back(numerals_of(eval_term(a, limits)));
                product *= std::max<std::size_t>(factors.back().size(), 1);
                check_size(product, limits);
            }
            ValueSet out;
            for_each_product(factors, [&](const std::vector<std::int64_t>& operands) {
                if (auto r = apply_operator(t.op, operands)) out.push_back(Value::numeral(*r));
            });
            normalize(out);
            return out;
        }
    }
    return {};
}

std::vector<ValueTuple> eval_term_tuple(const std::vector<Term>& ts, const EvalLimits& limits) {
    std::vector<ValueTuple> out{ValueTuple{}};
    for (const auto& t : ts) {
        const ValueSet values = eval_term(t, limits);
        std::vector<ValueTuple> next;
        check_size(out.size() * values.size(), limits);
        next.reserve(out.size() * values.size());
        for (const auto& prefix : out) {
            for (const auto& v : values) {
                ValueTuple tuple = prefix;
                tuple.push_back(v);
                next.push_back(std::move(tuple));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::strong_ordering GroundAtom::operator<=>(const GroundAtom& other) const {
    if (auto c = predicate.compare(other.predicate) <=> 0; c != 0) return c;
    if (auto c = args.size() <=> other.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (auto c = order_cmp(args[i], other.args[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string to_string(const GroundAtom& atom) {
    std::ostringstream out;
    out << atom;
    return out.str();
}

std::ostream& operator<<(std::ostream& out, const GroundAtom& atom) {
    out << atom.predicate;
    if (!atom.args.empty()) {
        out << "(";
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i > 0) out << ",";
            out << atom.args[i];
        }
        out << ")";
    }
    return out;
}

std::string to_string(const Interpretation& interp) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& a : interp) {
        if (!first) out << ", ";
        first = false;
        out << a;
    }
    out << "}";
    return out.str();
}

}  // namespace eg
