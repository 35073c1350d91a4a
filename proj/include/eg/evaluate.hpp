#pragma once

#include <cstdint>
#include <optional>

#include "eg/formula.hpp"
#include "eg/values.hpp"

namespace eg {

// Finite stand-in for the universe of precomputed terms. Quantifiers whose
// variable is not restricted by the formula range over `general` (general
// variables) or the integer window (integer variables).
struct EvalDomain {
    ValueSet general;
    std::int64_t int_lo = -8;
    std::int64_t int_hi = 8;

    // Adds inf, sup and the numerals of the window to `general`.
    void complete();
};

enum class Truth : std::uint8_t { False, Unknown, True };

Truth truth_not(Truth t);
Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);

struct EvalResult {
    Truth truth = Truth::False;
    // Set when some quantifier or aggregate variable was enumerated over the
    // finite domain rather than over values the formula itself restricts it to.
    bool approximated = false;
};

struct SatResult {
    bool value = false;
    bool approximated = false;
};

// Three-valued evaluation of a closed formula under every interpretation J
// with certain ⊆ J ⊆ possible. True/False mean the value is the same for all
// such J; with certain == possible the result is the classical truth value.
// `consulted` receives every atom whose status the result depends on.
EvalResult evaluate(const Formula& f, const Interpretation& certain, const Interpretation& possible,
                    const EvalDomain& domain, Interpretation* consulted = nullptr);

SatResult satisfies(const Formula& f, const Interpretation& interp, const EvalDomain& domain);

// Value of a closed argument; nullopt when an integer operation leaves its
// 64-bit range.
std::optional<Value> eval_argument(const Argument& a, const Interpretation& interp, const EvalDomain& domain,
                                   bool* approximated = nullptr);

// Default domain: precomputed terms of the formulas and the interpretation,
// the integer window, inf and sup.
EvalDomain default_domain(const std::vector<Formula>& formulas, const Interpretation& interp,
                          std::int64_t int_lo, std::int64_t int_hi);

// Precomputed terms occurring as arguments or inside Member right-hand sides.
void collect_constants(const Formula& f, ValueSet& out);

}  // namespace eg
