#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eg/random.hpp"
#include "eg/syntax.hpp"

namespace eg::test {

std::string corpus_path(const std::string& name);
std::string read_corpus(const std::string& name);
Program load_corpus(const std::string& name);
// Every program of the corpus, by file stem, sorted.
std::vector<std::string> corpus_names();

struct TheoremBattery {
    std::size_t checked = 0;
    std::size_t tight = 0;
    std::size_t rules = 0;
    std::size_t aggregate_rules = 0;
    std::size_t with_models = 0;
    std::size_t non_tight_strict = 0;  // non-tight programs with more completion models than stable models
    std::size_t skipped = 0;           // grounding outgrew the caps
    std::size_t approximated = 0;
    std::size_t theorem1_violations = 0;
    std::size_t theorem2_violations = 0;
    std::vector<std::string> failures;
};

// Runs verify_theorems on random programs until `count` were checked.
TheoremBattery theorem_battery(std::uint64_t seed, std::size_t count);

struct AggregateBattery {
    std::size_t expressions = 0;
    std::size_t pairs = 0;
    std::size_t disagreements = 0;
    std::size_t max_elements = 0;
    std::vector<std::string> failures;
};

// Fast reduct path against the expanded justified-set formula on every J ⊆ I.
AggregateBattery aggregate_battery(std::uint64_t seed, std::size_t count);

struct SimplifierBattery {
    std::size_t triples = 0;     // exact on both sides
    std::size_t approximated = 0;
    std::size_t disagreements = 0;
    std::size_t approximated_disagreements = 0;
    std::size_t changed = 0;     // simplification rewrote the formula
    std::vector<std::string> failures;
};

// satisfies(F) against satisfies(simplify(F)) until `count` exact triples were compared.
SimplifierBattery simplifier_battery(std::uint64_t seed, std::size_t count);

}  // namespace eg::test
