#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eg/evaluate.hpp"
#include "eg/formula.hpp"
#include "eg/ground.hpp"
#include "eg/syntax.hpp"

namespace eg {

using Rng = std::mt19937_64;

struct RandomProgramOptions {
    std::size_t max_rules = 4;
    std::size_t max_predicates = 3;
    std::size_t max_arity = 2;
    std::size_t max_constants = 4;
    std::size_t max_body = 3;
    double aggregate_rate = 0.25;  // chance that a rule gets an aggregate
};

struct RandomProgram {
    Program program;
    ValueSet constants;  // the domain constants the rules draw from
    std::size_t aggregate_rules = 0;
};

// Small programs whose global variables occur in positive body literals and
// whose aggregate variables occur in positive condition literals.
RandomProgram random_program(Rng& rng, const RandomProgramOptions& options = {});

// Instantiation setting over the given constants, widened by the program's own terms.
InstantiationConfig random_program_config(const RandomProgram& p);

struct RandomFormulaOptions {
    std::size_t max_depth = 4;
    bool aggregates = true;
    bool integer_variables = true;
};

// Closed formulas over p/1, q/2 and r/0 with constants 0..3 and a.
Formula random_formula(Rng& rng, const RandomFormulaOptions& options = {});
// Random subset of the atoms of p/1, q/2, r/0 over 0..3 and a.
Interpretation random_interpretation(Rng& rng);
// General values a, b, and a window of numerals around 0..3.
EvalDomain random_domain(Rng& rng);

struct RandomAggregate {
    Aggregate expression;        // closed: only its own variables occur
    Interpretation universe;     // atoms the conditions may refer to
    GroundAggregate ground;      // tau over the universe
};

// At most max_elements candidate tuples.
RandomAggregate random_aggregate(Rng& rng, std::size_t max_elements = 8);

}  // namespace eg
