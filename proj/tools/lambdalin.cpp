#include "lambdalin/harness.hpp"
#include "lambdalin/parser.hpp"
#include "lambdalin/rewrite.hpp"
#include "lambdalin/stdlib.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace lambdalin;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitSuiteFailure = 3;

struct CommonOpts {
    std::string expr;
    std::string file;
    long fuel = 10000;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::string format = "text";
    bool no_prelude = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_input) {
    if (wants_input) {
        auto* e = cmd->add_option("-e,--expr", o.expr, "inline expression");
        auto* f = cmd->add_option("-f,--file", o.file, "read a .lal file");
        e->excludes(f);
    }
    cmd->add_option("--fuel", o.fuel, "step budget")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "pick redexes at random with this seed")
        ->each([&o](const std::string&) { o.seeded = true; });
    cmd->add_option("--format", o.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    cmd->add_flag("--no-prelude", o.no_prelude, "do not bind the standard encodings");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Bindings load_prelude(const CommonOpts& o) {
    if (o.no_prelude) return {};
    if (const char* path = std::getenv("LAMBDALIN_PRELUDE"))
        return parse_program(read_file(path));
    return prelude::bindings();
}

std::string load_input(const CommonOpts& o) {
    if (!o.file.empty()) return read_file(o.file);
    if (!o.expr.empty()) return o.expr;
    throw std::runtime_error("no input: pass -e EXPR or -f FILE");
}

void report_parse_error(const ParseError& e) {
    std::cerr << "parse error at line " << e.span().line << ", column " << e.span().column << ": "
              << e.what() << "\n";
}

Strategy strategy_of(const CommonOpts& o) {
    return o.seeded ? Strategy::random_seeded(o.seed) : Strategy::deterministic();
}

int cmd_normalize(const CommonOpts& o) {
    const Bindings names = load_prelude(o);
    TermPtr t = parse_term(load_input(o), &names);
    NormalizeOutcome out = normalize_with_strategy(t, o.fuel, strategy_of(o));
    const Bindings* dict = o.no_prelude ? nullptr : &names;
    if (o.format == "machine") {
        json record{{"status", out.status == NormalizeStatus::Normal ? "normal" : "exhausted"},
                    {"steps", out.steps},
                    {"term", print_term(out.term, dict)}};
        std::cout << record.dump() << "\n";
    } else if (out.status == NormalizeStatus::Normal) {
        std::cout << print_term(out.term, dict) << "\n";
    } else {
        std::cout << "FUEL EXHAUSTED after " << out.steps << " steps\n"
                  << print_term(out.term, dict) << "\n";
    }
    return out.status == NormalizeStatus::Normal ? kExitOk : kExitExhausted;
}

int cmd_trace(const CommonOpts& o) {
    const Bindings names = load_prelude(o);
    TermPtr t = parse_term(load_input(o), &names);
    Trace tr = trace(t, o.fuel, strategy_of(o));
    const Bindings* dict = o.no_prelude ? nullptr : &names;
    const bool normal = tr.outcome.status == NormalizeStatus::Normal;
    if (o.format == "machine") {
        for (const TraceStep& s : tr.steps) {
            json record{{"step", s.index},
                        {"rule", std::string(rule_name(s.rule))},
                        {"path", s.path},
                        {"before", print_term(s.before, dict)},
                        {"after", print_term(s.after, dict)}};
            std::cout << record.dump() << "\n";
        }
        json final{{"status", normal ? "normal" : "exhausted"},
                   {"steps", tr.outcome.steps},
                   {"term", print_term(tr.outcome.term, dict)}};
        std::cout << final.dump() << "\n";
    } else {
        for (const TraceStep& s : tr.steps) std::cout << format_trace_step(s, dict) << "\n";
        std::cout << "outcome\t" << (normal ? "normal" : "exhausted") << "\t" << tr.outcome.steps
                  << "\t" << print_term(tr.outcome.term, dict) << "\n";
    }
    return normal ? kExitOk : kExitExhausted;
}

int cmd_parse(const CommonOpts& o) {
    const Bindings names = load_prelude(o);
    const std::string src = load_input(o);
    const Bindings* dict = o.no_prelude ? nullptr : &names;
    if (src.find("let") == 0 || src.find("\nlet") != std::string::npos ||
        src.find("let ") != std::string::npos) {
        Bindings defs = parse_program(src, &names);
        for (const auto& [name, term] : defs)
            std::cout << name << " = " << print_term(term, dict) << "\n";
    } else {
        std::cout << print_term(parse_term(src, &names), dict) << "\n";
    }
    return kExitOk;
}

int cmd_check(const CommonOpts& o, long samples, std::size_t max_size, bool unrestricted) {
    const bool machine = o.format == "machine";
    long failures = 0;
    auto emit_suite = [&](const char* suite, const SuiteReport& report) {
        for (const std::string& line : report.lines) {
            if (machine) {
                const auto tab1 = line.find('\t');
                const auto tab2 = line.find('\t', tab1 + 1);
                json record{{"suite", suite},
                            {"check", line.substr(0, tab1)},
                            {"status", line.substr(tab1 + 1, tab2 - tab1 - 1)},
                            {"detail", line.substr(tab2 + 1)}};
                std::cout << record.dump() << "\n";
            } else {
                std::cout << suite << "\t" << line << "\n";
            }
        }
        failures += report.failed;
    };

    emit_suite("restriction", unrestricted ? restriction_suite_unrestricted()
                                           : restriction_suite());
    emit_suite("critical-pair", critical_pair_suite());

    if (samples > 0) {
        ConfluenceConfig cfg;
        cfg.gen.seed = o.seed;
        cfg.samples = samples;
        cfg.fuel = o.fuel;
        cfg.max_size = max_size;
        ConfluenceReport rep = check_confluence_sample(cfg);
        failures += rep.disagreed + rep.shape_violations;
        if (machine) {
            json record{{"suite", "confluence"}, {"samples", rep.total},
                        {"agreed", rep.agreed},  {"disagreed", rep.disagreed},
                        {"normalized", rep.normalized},
                        {"jointly_normal", rep.jointly_normal},
                        {"shape_violations", rep.shape_violations}};
            std::cout << record.dump() << "\n";
        } else {
            std::cout << "confluence\tsamples=" << rep.total << "\tagreed=" << rep.agreed
                      << "\tdisagreed=" << rep.disagreed << "\tnormalized=" << rep.normalized
                      << "\tshape_violations=" << rep.shape_violations << "\n";
        }
        for (const ConfluenceFailure& f : rep.failures) {
            if (machine) {
                json record{{"suite", "confluence"},
                            {"counterexample", print_term(f.term)},
                            {"sample", f.sample_id},
                            {"normal_forms", f.normal_forms}};
                std::cout << record.dump() << "\n";
            } else {
                std::cout << "counterexample\tsample=" << f.sample_id << "\tterm="
                          << print_term(f.term) << "\n";
            }
        }
    }
    return failures == 0 ? kExitOk : kExitSuiteFailure;
}

int cmd_repl(const CommonOpts& o) {
    Bindings names = load_prelude(o);
    long fuel = o.fuel;
    bool tracing = false;
    std::string line;
    std::cout << "lambdalin repl; :quit to exit\n";
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        try {
            if (line[begin] == ':') {
                std::istringstream cmd(line.substr(begin + 1));
                std::string word;
                cmd >> word;
                if (word == "quit" || word == "q") break;
                if (word == "fuel") {
                    cmd >> fuel;
                    std::cout << "fuel = " << fuel << "\n";
                } else if (word == "trace") {
                    cmd >> word;
                    tracing = word == "on";
                    std::cout << "trace " << (tracing ? "on" : "off") << "\n";
                } else if (word == "eq") {
                    std::string rest;
                    std::getline(cmd, rest);
                    const auto comma = rest.find(',');
                    if (comma == std::string::npos) {
                        std::cout << "usage: :eq TERM, TERM\n";
                        continue;
                    }
                    TermPtr a = parse_term(rest.substr(0, comma), &names);
                    TermPtr b = parse_term(rest.substr(comma + 1), &names);
                    NormalizeOutcome na = normalize(a, fuel);
                    NormalizeOutcome nb = normalize(b, fuel);
                    if (na.status != NormalizeStatus::Normal ||
                        nb.status != NormalizeStatus::Normal)
                        std::cout << "not comparable within fuel\n";
                    else
                        std::cout << (alpha_ac_equal(na.term, nb.term) ? "equal" : "different")
                                  << "\n";
                } else {
                    std::cout << "directives: :quit :fuel N :trace on|off :eq A, B\n";
                }
                continue;
            }
            if (line.compare(begin, 4, "let ") == 0) {
                Bindings defs = parse_program(line.substr(begin), &names);
                for (auto& def : defs) {
                    std::cout << def.first << " defined\n";
                    names.push_back(std::move(def));
                }
                continue;
            }
            TermPtr t = parse_term(line, &names);
            if (tracing) {
                Trace tr = trace(t, fuel);
                for (const TraceStep& s : tr.steps)
                    std::cout << format_trace_step(s, &names) << "\n";
                if (tr.outcome.status == NormalizeStatus::Normal)
                    std::cout << print_term(tr.outcome.term, &names) << "\n";
                else
                    std::cout << "FUEL EXHAUSTED after " << tr.outcome.steps << " steps\n";
            } else {
                NormalizeOutcome out = normalize(t, fuel);
                if (out.status == NormalizeStatus::Normal)
                    std::cout << print_term(out.term, &names) << "\n";
                else
                    std::cout << "FUEL EXHAUSTED after " << out.steps << " steps\n";
            }
        } catch (const ParseError& e) {
            std::cout << "parse error at line " << e.span().line << ", column "
                      << e.span().column << ": " << e.what() << "\n";
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpreter for an untyped lambda calculus with linear combinations of terms"};
    app.require_subcommand(1);

    CommonOpts norm_opts, trace_opts, parse_opts, check_opts, repl_opts;
    long samples = 1000;
    std::size_t max_size = 800;
    bool unrestricted = false;

    add_common(app.add_subcommand("normalize", "reduce to normal form"), norm_opts, true);
    add_common(app.add_subcommand("trace", "print every rewrite step"), trace_opts, true);
    add_common(app.add_subcommand("parse", "syntax-check and echo canonically"), parse_opts, true);
    auto* check = app.add_subcommand("check", "run the property suites");
    add_common(check, check_opts, false);
    check->add_option("--samples", samples, "confluence sample count");
    check->add_option("--max-size", max_size, "abort a run past this many nodes");
    check->add_flag("--unrestricted-factoring", unrestricted)->group("");  // debug, hidden
    add_common(app.add_subcommand("repl", "interactive loop"), repl_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitParse : kExitOk;
    }

    try {
        if (app.got_subcommand("normalize")) return cmd_normalize(norm_opts);
        if (app.got_subcommand("trace")) return cmd_trace(trace_opts);
        if (app.got_subcommand("parse")) return cmd_parse(parse_opts);
        if (app.got_subcommand("check")) return cmd_check(check_opts, samples, max_size, unrestricted);
        if (app.got_subcommand("repl")) return cmd_repl(repl_opts);
    } catch (const ParseError& e) {
        report_parse_error(e);
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
