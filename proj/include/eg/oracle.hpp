#pragma once

#include <string>
#include <vector>

#include "eg/completion.hpp"
#include "eg/ground.hpp"
#include "eg/syntax.hpp"
#include "eg/tightness.hpp"

namespace eg {

// Domain built from the program: its precomputed terms, inf, sup, and the
// numerals from one below its least numeral to one above its greatest.
InstantiationConfig default_config(const Program& program);

// Least set of atoms closed under the rules when negative literals and
// aggregates count as possibly true. Every stable model is a subset.
// Throws ResourceError when it outgrows max_vocabulary_atoms.
Interpretation possible_atoms(const Program& program, const InstantiationConfig& cfg, bool* unrestricted = nullptr);

struct GroundProgram {
    Interpretation universe;             // possible atoms
    std::vector<GroundFormula> formulas; // tau of the relevant instances, simplified, #true dropped
    std::size_t instance_count = 0;
    // Some variable ranged over the finite domain instead of atoms or values.
    bool approximated = false;
    std::vector<std::string> warnings;
};

GroundProgram ground_program(const Program& program, const InstantiationConfig& cfg);
std::string to_string(const GroundProgram& ground, const RenderOptions& options = {});

bool is_model(const GroundProgram& ground, const Interpretation& interp);
// No J strictly inside I satisfies the reduct of tau Gamma with respect to I.
bool is_stable(const GroundProgram& ground, const Interpretation& interp);

struct ModelSet {
    std::vector<Interpretation> models;  // sorted
    bool approximated = false;
    std::vector<std::string> warnings;
};

ModelSet stable_models(const GroundProgram& ground);
ModelSet stable_models(const Program& program, const InstantiationConfig& cfg);

struct CompletionSearch {
    ModelSet result;
    // Candidate atoms: the vocabulary over the domain minus atoms whose
    // definition can never hold.
    Interpretation universe;
    EvalDomain domain;
};

// Subsets of the vocabulary satisfying the completion; `extra` values join the domain.
CompletionSearch completion_models(const Program& program, const InstantiationConfig& cfg,
                                   const Interpretation& extra = {});

struct TheoremReport {
    std::vector<Interpretation> stable;
    std::vector<Interpretation> completion;
    TightnessVerdict tightness;
    // Theorem 1: every stable model satisfies the completion.
    bool theorem1 = true;
    std::vector<Interpretation> theorem1_violations;
    // Theorem 2, decided only for tight programs.
    bool theorem2 = true;
    // Completion models that are not stable, and stable models missing from the completion models.
    std::vector<Interpretation> not_stable;
    std::vector<Interpretation> not_completion;
    bool approximated = false;
    std::vector<std::string> warnings;

    bool ok() const { return theorem1 && (!tightness.tight || theorem2); }
};

TheoremReport verify_theorems(const Program& program, const InstantiationConfig& cfg);
std::string to_string(const TheoremReport& report);

}  // namespace eg
