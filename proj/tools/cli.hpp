#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eg/completion.hpp"
#include "eg/formula.hpp"
#include "eg/simplify.hpp"
#include "eg/syntax.hpp"

namespace eg::cli {

enum class Command { Complete, Tight, Ground, Models, Verify, Export };
enum class Format { Text, Utf8, Json, Dot };

enum Exit : int { Ok = 0, Mismatch = 1, InputError = 2, ResourceLimit = 3 };

struct CliConfig {
    Command command = Command::Complete;
    std::string input;  // path; empty or "-" reads the input stream
    bool simplify = false;
    bool integers = false;
    bool trace = false;
    Format format = Format::Text;
    std::optional<std::int64_t> int_min;
    std::optional<std::int64_t> int_max;
    std::optional<std::size_t> max_atoms;
    std::optional<std::size_t> max_instances;
    std::optional<std::size_t> max_aggregate_tuples;
    std::vector<std::string> domain;  // extra constants, one term each
    // Without an input path, the program is the random battery program for this seed.
    std::optional<std::uint64_t> seed;
};

// Returns an exit code when the arguments are invalid or only help was requested.
std::optional<int> parse_arguments(int argc, const char* const* argv, CliConfig& cfg, std::ostream& out,
                                   std::ostream& err);

int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

inline constexpr const char* kSchema = "eg-completion/1";

nlohmann::json to_json(const Term& t);
nlohmann::json to_json(const Argument& a);
nlohmann::json to_json(const Formula& f);
nlohmann::json to_json(const CompletionResult& completion);
nlohmann::json to_json(const IntegerizeResult& result);

}  // namespace eg::cli
