// Command-line front end: solve instances, check matchings, derive extended
// preference lists, generate random ensembles, run benchmark sweeps, and
// emit logic programs.
//
// Exit codes: 0 success or solution found, 10 no stable matching exists,
// 11 time limit hit (best incumbent written when one exists), 2 usage
// error, 3 input error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <srti/srti.hpp>

namespace {

constexpr int kExitSolution = 0;
constexpr int kExitUnsat = 10;
constexpr int kExitTimeout = 11;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw srti::ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw srti::ParseError("cannot open output file '" + path + "'");
    out << text;
}

srti::Instance with_explicit_first(const srti::Instance& inst, bool explicit_first) {
    std::vector<srti::PreferenceOrder> orders;
    orders.reserve(inst.size());
    for (srti::Agent a = 0; a < inst.size(); ++a) orders.push_back(inst.order(a));
    return srti::Instance(
        inst.ids(), std::move(orders),
        inst.has_criteria() ? std::optional<srti::CriteriaSpec>(inst.criteria()) : std::nullopt,
        inst.profiles(), inst.forbidden(), explicit_first);
}

// Tie groups as `[a b]`, singleton tiers bare, tiers joined by spaces.
std::string format_order(const srti::Instance& inst, const srti::PreferenceOrder& order) {
    std::string out;
    for (const auto& tier : order.tiers) {
        if (!out.empty()) out += ' ';
        if (tier.size() > 1) {
            out += '[';
            for (size_t i = 0; i < tier.size(); ++i) {
                if (i > 0) out += ' ';
                out += inst.id(tier[i]);
            }
            out += ']';
        } else {
            out += inst.id(tier.front());
        }
    }
    return out;
}

std::string format_vector(const srti::ObjectiveVector& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out + "]";
}

struct SolveArgs {
    std::string input = "-";
    std::string output;
    std::string mode = "decision";
    std::string objective_path;
    double time_limit = 0.0;
    std::uint64_t seed = 0;
    bool deterministic = true;
    bool force_explicit_first = false;
    bool force_criteria_first = false;
};

// Loads an instance, applies the list-order override, derives extended
// lists when questionnaire data is present, and resolves the objective.
std::pair<srti::Instance, srti::ObjectiveConfig> prepare(const SolveArgs& args) {
    srti::InstanceDocument doc = srti::parse_instance_document(read_input(args.input));
    srti::Instance inst = std::move(doc.instance);
    if (args.force_explicit_first) inst = with_explicit_first(inst, true);
    if (args.force_criteria_first) inst = with_explicit_first(inst, false);
    if (inst.has_criteria()) inst = srti::personalize_instance(inst);
    srti::ObjectiveConfig objective;
    if (!args.objective_path.empty())
        objective = srti::parse_objective_config(read_input(args.objective_path), inst);
    else if (doc.objective)
        objective = *doc.objective;
    return {std::move(inst), std::move(objective)};
}

int run_solve(const SolveArgs& args) {
    auto [inst, objective] = prepare(args);
    if (args.mode == "optimize" && objective.empty()) {
        std::cerr << "solve: optimize mode needs an objective (embed an `objective` block in the "
                     "instance or pass --objective)\n";
        return kExitUsage;
    }

    srti::SolveConfig cfg;
    cfg.mode = args.mode == "optimize" ? srti::SolveMode::optimize : srti::SolveMode::decision;
    cfg.objective = objective;
    if (args.time_limit > 0.0) cfg.time_limit_s = args.time_limit;
    cfg.seed = args.seed;
    cfg.deterministic = args.deterministic;
    cfg.on_improvement = [](double t, const srti::ObjectiveVector& v) {
        std::fprintf(stderr, "t=%.3f vector=%s\n", t, format_vector(v).c_str());
    };

    const srti::SolveResult result = srti::solve(inst, cfg);
    switch (result.outcome) {
        case srti::SolveOutcome::solution: {
            const bool stable = srti::is_stable(inst, *result.matching);
            write_output(args.output,
                         srti::matching_document(inst, *result.matching, result.vector, stable));
            return kExitSolution;
        }
        case srti::SolveOutcome::unsat:
            std::cerr << "no stable matching exists\n";
            return kExitUnsat;
        case srti::SolveOutcome::timeout:
            if (result.matching) {
                const bool stable = srti::is_stable(inst, *result.matching);
                write_output(args.output, srti::matching_document(inst, *result.matching,
                                                                  result.vector, stable));
                std::cerr << "time limit reached; best incumbent written\n";
            } else {
                std::cerr << "time limit reached before any solution was found\n";
            }
            return kExitTimeout;
    }
    return kExitInput;
}

int run_check(const std::string& instance_path, const std::string& matching_path,
              const std::string& objective_path) {
    SolveArgs args;
    args.input = instance_path;
    args.objective_path = objective_path;
    auto [inst, objective] = prepare(args);
    const srti::Matching m = srti::parse_matching_document(inst, read_input(matching_path));

    nlohmann::json report;
    const auto violations = srti::matching_violations(inst, m);
    report["valid"] = violations.empty();
    report["violations"] = violations;
    auto blocking = srti::blocking_pairs(inst, m);
    nlohmann::json bp = nlohmann::json::array();
    for (const auto& b : blocking) bp.push_back({inst.id(b.x), inst.id(b.y)});
    report["blocking_pairs"] = std::move(bp);
    report["stable"] = blocking.empty();
    nlohmann::json fv = nlohmann::json::array();
    for (auto [a, b] : srti::forbidden_violations(inst, m))
        fv.push_back({inst.id(a), inst.id(b)});
    report["forbidden_violations"] = std::move(fv);
    report["objective"] = srti::objective_vector(inst, m, objective);
    std::cout << report.dump(2) << "\n";
    return kExitSolution;
}

int run_derive(const std::string& input, const std::string& output, bool force_explicit,
               bool force_criteria) {
    srti::InstanceDocument doc = srti::parse_instance_document(read_input(input));
    srti::Instance inst = std::move(doc.instance);
    if (force_explicit) inst = with_explicit_first(inst, true);
    if (force_criteria) inst = with_explicit_first(inst, false);
    if (!inst.has_criteria())
        throw srti::ParseError("derive: instance has no criteria to derive from");
    const srti::Instance derived = srti::personalize_instance(inst);
    for (srti::Agent a = 0; a < derived.size(); ++a)
        std::cout << derived.id(a) << ": " << format_order(derived, derived.order(a)) << "\n";
    if (!output.empty()) write_output(output, srti::serialize_instance(derived, doc.objective));
    return kExitSolution;
}

struct GenerateArgs {
    int agents = 20;
    double edge_prob = 0.5;
    int criteria = 0;
    std::vector<int> choice_sizes;
    int weight_min = 0;
    int weight_max = 5;
    double tie_prob = 0.0;
    std::uint64_t seed = 1;
    int count = 1;
    std::string output;
};

srti::Instance generate_one(const GenerateArgs& args, std::uint64_t seed) {
    srti::Instance inst = srti::generate_srti(args.agents, args.edge_prob, seed, args.tie_prob);
    if (args.criteria > 0) {
        srti::CriteriaGenOptions opts;
        opts.count = args.criteria;
        opts.choice_sizes = args.choice_sizes;
        opts.weight_min = args.weight_min;
        opts.weight_max = args.weight_max;
        inst = srti::attach_random_criteria(inst, opts, seed + 0x9E3779B97F4A7C15ULL);
    }
    return inst;
}

int run_generate(const GenerateArgs& args) {
    if (args.count == 1) {
        write_output(args.output, srti::serialize_instance(generate_one(args, args.seed)));
        return kExitSolution;
    }
    if (args.output.empty() || args.output == "-") {
        std::cerr << "generate: --count > 1 needs --output DIRECTORY\n";
        return kExitUsage;
    }
    std::filesystem::create_directories(args.output);
    for (int i = 0; i < args.count; ++i) {
        const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(i);
        const std::string path =
            (std::filesystem::path(args.output) / ("instance_" + std::to_string(seed) + ".json"))
                .string();
        write_output(path, srti::serialize_instance(generate_one(args, seed)));
    }
    return kExitSolution;
}

struct BenchArgs {
    std::vector<int> sizes = {20, 40, 60};
    std::vector<int> degrees = {25, 50};
    int criteria = 3;
    std::vector<int> choice_sizes;
    int weight_min = 0;
    int weight_max = 5;
    int count = 20;
    std::uint64_t seed = 1;
    std::string mode = "decision";
    double time_limit = 0.0;
    std::string output;
};

int run_bench(const BenchArgs& args) {
    std::ostringstream csv;
    csv << "seed,n,degree,m,mode,outcome,time_s,vector,completeness\n";
    std::uint64_t next_seed = args.seed;
    for (int n : args.sizes) {
        for (int degree : args.degrees) {
            for (int i = 0; i < args.count; ++i) {
                const std::uint64_t seed = next_seed++;
                GenerateArgs gen;
                gen.agents = n;
                gen.edge_prob = degree / 100.0;
                gen.criteria = args.criteria;
                gen.choice_sizes = args.choice_sizes;
                gen.weight_min = args.weight_min;
                gen.weight_max = args.weight_max;

                const auto t0 = std::chrono::steady_clock::now();
                srti::Instance inst = generate_one(gen, seed);
                if (inst.has_criteria()) inst = srti::personalize_instance(inst);
                srti::SolveConfig cfg;
                cfg.mode = args.mode == "optimize" ? srti::SolveMode::optimize
                                                   : srti::SolveMode::decision;
                if (args.mode == "optimize")
                    for (int c : inst.criteria().priority_order)
                        cfg.objective.levels.push_back({srti::LevelKind::criterion, c});
                if (args.time_limit > 0.0) cfg.time_limit_s = args.time_limit;
                const srti::SolveResult result = srti::solve(inst, cfg);
                const double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                const char* outcome = result.outcome == srti::SolveOutcome::solution ? "solution"
                                      : result.outcome == srti::SolveOutcome::unsat ? "unsat"
                                                                                    : "timeout";
                char time_buf[32];
                std::snprintf(time_buf, sizeof(time_buf), "%.6f", elapsed);
                char deg_buf[32];
                std::snprintf(deg_buf, sizeof(deg_buf), "%.2f", srti::completeness_degree(inst));
                csv << seed << "," << n << "," << degree << "," << args.criteria << ","
                    << args.mode << "," << outcome << "," << time_buf << ",\""
                    << format_vector(result.vector) << "\"," << deg_buf << "\n";
            }
        }
    }
    write_output(args.output, csv.str());
    return kExitSolution;
}

int run_emit_asp(const SolveArgs& args) {
    auto [inst, objective] = prepare(args);
    write_output(args.output, srti::asp::emit_program(inst, objective));
    return kExitSolution;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable roommate matching with questionnaire-derived preferences"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "find a stable matching");
    solve->add_option("--input", solve_args.input, "instance document, - for stdin");
    solve->add_option("--output", solve_args.output, "matching document, - or empty for stdout");
    solve->add_option("--mode", solve_args.mode, "decision or optimize")
        ->check(CLI::IsMember({"decision", "optimize"}));
    solve->add_option("--objective", solve_args.objective_path,
                      "objective level list (overrides the instance's block)");
    solve->add_option("--time-limit", solve_args.time_limit, "seconds, 0 = none");
    solve->add_option("--seed", solve_args.seed, "random seed recorded in outputs");
    solve->add_flag("--deterministic,!--no-deterministic", solve_args.deterministic,
                    "canonical tie-breaking (default on)");
    solve->add_flag("--explicit-first", solve_args.force_explicit_first,
                    "explicit lists before derived lists");
    solve->add_flag("--criteria-first", solve_args.force_criteria_first,
                    "derived lists before explicit lists");

    std::string check_instance, check_matching, check_objective;
    CLI::App* check = app.add_subcommand("check", "verify a matching document");
    check->add_option("--input", check_instance, "instance document")->required();
    check->add_option("--matching", check_matching, "matching document")->required();
    check->add_option("--objective", check_objective, "objective level list");

    std::string derive_input = "-", derive_output;
    bool derive_explicit = false, derive_criteria = false;
    CLI::App* derive = app.add_subcommand("derive", "print extended preference lists");
    derive->add_option("--input", derive_input, "instance document with criteria");
    derive->add_option("--output", derive_output, "also write the derived instance document");
    derive->add_flag("--explicit-first", derive_explicit, "explicit lists first");
    derive->add_flag("--criteria-first", derive_criteria, "derived lists first");

    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "random instance ensembles");
    generate->add_option("--agents", gen_args.agents, "agent count")->check(CLI::PositiveNumber);
    generate->add_option("--edge-prob", gen_args.edge_prob, "acceptability probability in [0,1]");
    generate->add_option("--criteria", gen_args.criteria, "criteria count, 0 = none");
    generate->add_option("--choice-sizes", gen_args.choice_sizes,
                         "choices per criterion, cycled (default 3)")
        ->delimiter(',');
    generate->add_option("--weight-min", gen_args.weight_min, "minimum criterion weight");
    generate->add_option("--weight-max", gen_args.weight_max, "maximum criterion weight");
    generate->add_option("--tie-prob", gen_args.tie_prob, "tie-injection probability");
    generate->add_option("--seed", gen_args.seed, "base seed");
    generate->add_option("--count", gen_args.count, "instances to generate")
        ->check(CLI::PositiveNumber);
    generate->add_option("--output", gen_args.output, "file, or directory when --count > 1");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "sweep sizes x degrees, write CSV");
    bench->add_option("--sizes", bench_args.sizes, "agent counts")->delimiter(',');
    bench->add_option("--degrees", bench_args.degrees, "completeness degrees in percent")
        ->delimiter(',');
    bench->add_option("--criteria", bench_args.criteria, "criteria count, 0 = none");
    bench->add_option("--choice-sizes", bench_args.choice_sizes, "choices per criterion")
        ->delimiter(',');
    bench->add_option("--weight-min", bench_args.weight_min, "minimum criterion weight");
    bench->add_option("--weight-max", bench_args.weight_max, "maximum criterion weight");
    bench->add_option("--count", bench_args.count, "instances per cell");
    bench->add_option("--seed", bench_args.seed, "base seed");
    bench->add_option("--mode", bench_args.mode, "decision or optimize")
        ->check(CLI::IsMember({"decision", "optimize"}));
    bench->add_option("--time-limit", bench_args.time_limit, "seconds per instance, 0 = none");
    bench->add_option("--output", bench_args.output, "CSV path, - or empty for stdout");

    SolveArgs emit_args;
    CLI::App* emit = app.add_subcommand("emit-asp", "write the logic-program encoding");
    emit->add_option("--input", emit_args.input, "instance document, - for stdin");
    emit->add_option("--output", emit_args.output, "program path, - or empty for stdout");
    emit->add_option("--objective", emit_args.objective_path, "objective level list");
    emit->add_flag("--explicit-first", emit_args.force_explicit_first, "explicit lists first");
    emit->add_flag("--criteria-first", emit_args.force_criteria_first, "derived lists first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (check->parsed()) return run_check(check_instance, check_matching, check_objective);
        if (derive->parsed())
            return run_derive(derive_input, derive_output, derive_explicit, derive_criteria);
        if (generate->parsed()) return run_generate(gen_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (emit->parsed()) return run_emit_asp(emit_args);
    } catch (const srti::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const srti::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
