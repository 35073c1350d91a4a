#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eg/syntax.hpp"

namespace eg {

// A precomputed term.
struct Value {
    enum class Kind : std::uint8_t { Inf, Numeral, Symbol, Function, Sup };

    Kind kind = Kind::Numeral;
    std::int64_t number = 0;
    std::string name;
    std::vector<Value> args;

    static Value inf();
    static Value sup();
    static Value numeral(std::int64_t n);
    static Value symbol(std::string name);
    static Value function(std::string name, std::vector<Value> args);

    bool is_numeral() const { return kind == Kind::Numeral; }

    bool operator==(const Value& other) const;
};

// inf < numerals < symbolic constants < function terms < sup. Symbolic
// constants compare lexicographically; function terms by arity, name, then
// arguments.
std::strong_ordering order_cmp(const Value& a, const Value& b);
inline std::strong_ordering operator<=>(const Value& a, const Value& b) { return order_cmp(a, b); }

std::string to_string(const Value& v);
std::ostream& operator<<(std::ostream& out, const Value& v);

Term to_term(const Value& v);
// Defined exactly for precomputed terms.
std::optional<Value> to_value(const Term& t);

// Sorted, duplicate-free.
using ValueSet = std::vector<Value>;
using ValueTuple = std::vector<Value>;

bool contains(const ValueSet& set, const Value& v);
void normalize(ValueSet& set);

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalLimits {
    std::size_t max_values = 1'000'000;
};

// The integer function of an operation name; nullopt outside its domain.
// Results that do not fit in 64 bits are treated as outside the domain.
std::optional<std::int64_t> apply_operator(Operator op, std::span<const std::int64_t> operands);

// [t] for a ground term. Throws std::invalid_argument when t has variables
// and ResourceError when a value set would exceed the limit.
ValueSet eval_term(const Term& t, const EvalLimits& limits = {});

// [t1, ..., tn]: the Cartesian product, in lexicographic order.
std::vector<ValueTuple> eval_term_tuple(const std::vector<Term>& ts, const EvalLimits& limits = {});

struct GroundAtom {
    std::string predicate;
    std::vector<Value> args;

    bool operator==(const GroundAtom&) const = default;
    // Predicate name, then arity, then arguments.
    std::strong_ordering operator<=>(const GroundAtom& other) const;
};

std::string to_string(const GroundAtom& atom);
std::ostream& operator<<(std::ostream& out, const GroundAtom& atom);

using Interpretation = std::set<GroundAtom>;

std::string to_string(const Interpretation& interp);

}  // namespace eg
