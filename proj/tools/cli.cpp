#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "eg/oracle.hpp"
#include "eg/random.hpp"
#include "eg/tightness.hpp"

namespace eg::cli {
namespace {

using nlohmann::json;

const std::map<std::string, Command> kCommands{{"complete", Command::Complete}, {"tight", Command::Tight},
                                               {"ground", Command::Ground},     {"models", Command::Models},
                                               {"verify", Command::Verify},     {"export", Command::Export}};
const std::map<std::string, Format> kFormats{
    {"text", Format::Text}, {"utf8", Format::Utf8}, {"json", Format::Json}, {"dot", Format::Dot}};

class BadInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool allowed(Command c, Format f) {
    switch (c) {
        case Command::Tight: return true;
        case Command::Export: return f == Format::Json || f == Format::Dot;
        default: return f != Format::Dot;
    }
}

std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Program load(const CliConfig& cfg, std::istream& in, std::string& origin) {
    if (cfg.input.empty() && cfg.seed) {
        Rng rng(*cfg.seed);
        origin = "seed " + std::to_string(*cfg.seed);
        return random_program(rng).program;
    }
    std::string text;
    if (cfg.input.empty() || cfg.input == "-") {
        origin = "<stdin>";
        text = read_all(in);
    } else {
        origin = cfg.input;
        std::ifstream file(cfg.input, std::ios::binary);
        if (!file) throw BadInput("cannot read " + cfg.input);
        text = read_all(file);
    }
    return parse_program(text);
}

ValueSet extra_values(const std::vector<std::string>& terms) {
    ValueSet out;
    for (const auto& text : terms) {
        Program p;
        try {
            p = parse_program("domain(" + text + ").");
        } catch (const ParseError&) {
            throw BadInput("--domain: cannot parse term '" + text + "'");
        }
        const Term& t = p.rules.at(0).head.args.at(0);
        const auto v = to_value(t);
        if (!v) throw BadInput("--domain: '" + text + "' is not a precomputed term");
        out.push_back(*v);
    }
    normalize(out);
    return out;
}

InstantiationConfig instantiation(const CliConfig& cli, const Program& program) {
    InstantiationConfig cfg = default_config(program);
    if (cli.int_min || cli.int_max) {
        const std::int64_t lo = cli.int_min.value_or(cfg.domain.int_lo);
        const std::int64_t hi = cli.int_max.value_or(cfg.domain.int_hi);
        if (lo > hi) throw BadInput("--int-min exceeds --int-max");
        ValueSet kept;
        for (const auto& v : cfg.domain.general) {
            if (!v.is_numeral() || (v.number >= lo && v.number <= hi)) kept.push_back(v);
        }
        cfg.domain.general = std::move(kept);
        cfg.domain.int_lo = lo;
        cfg.domain.int_hi = hi;
    }
    const ValueSet extra = extra_values(cli.domain);
    cfg.domain.general.insert(cfg.domain.general.end(), extra.begin(), extra.end());
    cfg.domain.complete();
    if (cli.max_atoms) cfg.max_vocabulary_atoms = *cli.max_atoms;
    if (cli.max_instances) cfg.max_instances = *cli.max_instances;
    if (cli.max_aggregate_tuples) cfg.max_aggregate_tuples = *cli.max_aggregate_tuples;
    return cfg;
}

RenderOptions render(const CliConfig& cfg) { return {cfg.format == Format::Utf8}; }

json atoms_json(const Interpretation& interp) {
    json out = json::array();
    for (const auto& a : interp) out.push_back(to_string(a));
    return out;
}

json models_json(const std::vector<Interpretation>& models) {
    json out = json::array();
    for (const auto& m : models) out.push_back(atoms_json(m));
    return out;
}

json edges_json(const DependencyGraph& g) {
    json out = json::array();
    for (const auto& e : g.edges) out.push_back({{"from", to_string(e.from)}, {"to", to_string(e.to)}, {"rule", e.rule + 1}});
    return out;
}

std::string cycle_text(const TightnessVerdict& v) {
    std::string s;
    for (const auto& p : v.cycle) s += to_string(p) + " -> ";
    if (!v.cycle.empty()) s += to_string(v.cycle.front());
    return s;
}

int complete(const CliConfig& cfg, const Program& program, std::ostream& out) {
    const RenderOptions opts = render(cfg);
    SimplifyOptions sopts;
    sopts.record_trace = cfg.trace;
    const CompletionResult raw = completion(program);
    if (cfg.integers) {
        const IntegerizeResult result = integerize(raw, sopts);
        if (cfg.format == Format::Json) {
            out << to_json(result).dump(2) << "\n";
            return Ok;
        }
        if (cfg.trace) out << to_string(result.trace, opts) << "\n";
        for (const auto& f : result.formulas()) out << to_string(f, opts) << "\n";
        return Ok;
    }
    RewriteTrace trace;
    const CompletionResult shown = cfg.simplify ? simplify(raw, sopts, &trace) : raw;
    if (cfg.format == Format::Json) {
        out << to_json(shown).dump(2) << "\n";
        return Ok;
    }
    if (cfg.trace && cfg.simplify) out << to_string(trace, opts) << "\n";
    for (const auto& f : shown.formulas()) out << to_string(f, opts) << "\n";
    return Ok;
}

int tight(const CliConfig& cfg, const Program& program, std::ostream& out) {
    const DependencyGraph g = dependency_graph(program);
    const TightnessVerdict v = check_acyclic(g);
    if (cfg.format == Format::Dot) {
        out << to_dot(g);
    } else if (cfg.format == Format::Json) {
        json cycle = json::array();
        for (const auto& p : v.cycle) cycle.push_back(to_string(p));
        out << json{{"tight", v.tight}, {"cycle", cycle}, {"edges", edges_json(g)}}.dump(2) << "\n";
    } else {
        out << (v.tight ? "tight" : "not tight (cycle " + cycle_text(v) + ")") << "\n";
        for (const auto& e : g.edges) out << to_string(e.from) << " -> " << to_string(e.to) << "\n";
    }
    return Ok;
}

void warn(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
}

int ground(const CliConfig& cfg, const Program& program, std::ostream& out, std::ostream& err) {
    const GroundProgram g = ground_program(program, instantiation(cfg, program));
    if (cfg.format == Format::Json) {
        json formulas = json::array();
        for (const auto& f : g.formulas) formulas.push_back(to_string(f));
        out << json{{"universe", atoms_json(g.universe)},
                    {"formulas", formulas},
                    {"instances", g.instance_count},
                    {"approximated", g.approximated}}
                   .dump(2)
            << "\n";
    } else {
        out << to_string(g, render(cfg));
    }
    warn(g.warnings, err);
    return Ok;
}

int models(const CliConfig& cfg, const Program& program, std::ostream& out, std::ostream& err) {
    const ModelSet m = stable_models(program, instantiation(cfg, program));
    if (cfg.format == Format::Json) {
        out << json{{"models", models_json(m.models)}, {"approximated", m.approximated}}.dump(2) << "\n";
    } else {
        for (const auto& model : m.models) out << to_string(model) << "\n";
    }
    warn(m.warnings, err);
    return Ok;
}

int verify(const CliConfig& cfg, const Program& program, std::ostream& out) {
    const TheoremReport r = verify_theorems(program, instantiation(cfg, program));
    if (cfg.format == Format::Json) {
        json cycle = json::array();
        for (const auto& p : r.tightness.cycle) cycle.push_back(to_string(p));
        out << json{{"stable", models_json(r.stable)},
                    {"completion", models_json(r.completion)},
                    {"tight", r.tightness.tight},
                    {"cycle", cycle},
                    {"theorem1", r.theorem1},
                    {"theorem1_violations", models_json(r.theorem1_violations)},
                    {"theorem2", r.tightness.tight ? json(r.theorem2) : json(nullptr)},
                    {"not_stable", models_json(r.not_stable)},
                    {"not_completion", models_json(r.not_completion)},
                    {"approximated", r.approximated},
                    {"warnings", r.warnings}}
                   .dump(2)
            << "\n";
    } else {
        out << to_string(r);
    }
    return r.ok() ? Ok : Mismatch;
}

int export_program(const CliConfig& cfg, const Program& program, std::ostream& out) {
    if (cfg.format == Format::Dot) {
        out << to_dot(dependency_graph(program));
        return Ok;
    }
    const CompletionResult raw = completion(program);
    json doc = cfg.integers ? to_json(integerize(raw)) : to_json(cfg.simplify ? simplify(raw) : raw);
    json rules = json::array();
    for (const auto& r : program.rules) rules.push_back(to_string(r));
    doc["program"] = rules;
    const TightnessVerdict v = is_tight(program);
    doc["tight"] = v.tight;
    doc["dependencies"] = edges_json(dependency_graph(program));
    out << doc.dump(2) << "\n";
    return Ok;
}

}  // namespace

std::optional<int> parse_arguments(int argc, const char* const* argv, CliConfig& cfg, std::ostream& out,
                                   std::ostream& err) {
    CLI::App app{"Completion of logic programs with aggregates"};
    app.name("egc");
    std::string command;
    std::string format = "text";
    std::vector<std::string> domain;
    app.add_option("command", command, "complete | tight | ground | models | verify | export")
        ->required()
        ->check(CLI::IsMember({"complete", "tight", "ground", "models", "verify", "export"}));
    app.add_option("input", cfg.input, "program file; '-' or absent reads stdin");
    app.add_flag("--simplify", cfg.simplify, "simplify the completion");
    app.add_flag("--integers", cfg.integers, "introduce integer variables (implies --simplify)");
    app.add_flag("--trace", cfg.trace, "print the rewrite steps");
    app.add_option("--format", format, "text | utf8 | json | dot")
        ->check(CLI::IsMember({"text", "utf8", "json", "dot"}));
    app.add_option("--int-min", cfg.int_min, "least numeral of the integer window");
    app.add_option("--int-max", cfg.int_max, "greatest numeral of the integer window");
    app.add_option("--max-atoms", cfg.max_atoms, "cap on candidate atoms")->check(CLI::PositiveNumber);
    app.add_option("--max-instances", cfg.max_instances, "cap on rule instances")->check(CLI::PositiveNumber);
    app.add_option("--max-aggregate-tuples", cfg.max_aggregate_tuples, "cap on tuples of an expanded aggregate")
        ->check(CLI::PositiveNumber);
    app.add_option("--domain", domain, "extra constants, comma separated")->delimiter(',');
    app.add_option("--seed", cfg.seed, "use the random battery program for this seed when no input is given");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "egc: " << e.what() << "\n";
        return InputError;
    }
    cfg.command = kCommands.at(command);
    cfg.format = kFormats.at(format);
    cfg.domain = domain;
    if (!allowed(cfg.command, cfg.format)) {
        err << "egc: --format " << format << " is not available for " << command << "\n";
        return InputError;
    }
    return std::nullopt;
}

int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    std::string origin;
    try {
        const Program program = load(cfg, in, origin);
        if (cfg.input.empty() && cfg.seed && (cfg.format == Format::Text || cfg.format == Format::Utf8)) {
            std::istringstream rules(print_program(program));
            for (std::string line; std::getline(rules, line);) out << "% " << line << "\n";
        }
        switch (cfg.command) {
            case Command::Complete: return complete(cfg, program, out);
            case Command::Tight: return tight(cfg, program, out);
            case Command::Ground: return ground(cfg, program, out, err);
            case Command::Models: return models(cfg, program, out, err);
            case Command::Verify: return verify(cfg, program, out);
            case Command::Export: return export_program(cfg, program, out);
        }
    } catch (const ParseError& e) {
        err << origin << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
        return InputError;
    } catch (const BadInput& e) {
        err << "egc: " << e.what() << "\n";
        return InputError;
    } catch (const ResourceError& e) {
        err << "egc: resource limit: " << e.what() << "\n";
        return ResourceLimit;
    } catch (const std::invalid_argument& e) {
        err << "egc: " << e.what() << "\n";
        return InputError;
    }
    return Ok;
}

}  // namespace eg::cli
