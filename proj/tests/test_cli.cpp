// Drives the real binary: document round trips, report contents, event
// stream format, CSV schema, exit codes.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <srti/encoding.hpp>
#include <srti/generator.hpp>
#include <srti/io.hpp>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path tmp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("srti_cli_test_" + std::to_string(static_cast<unsigned>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path spit(const std::string& name, const std::string& text) {
    const fs::path p = tmp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = tmp_dir() / ("out" + std::to_string(++counter));
    const fs::path err = tmp_dir() / ("err" + std::to_string(counter));
    const std::string cmd = std::string(SRTI_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    return {(rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("check reports the blocking pair of an unstable matching") {
    const auto inst = spit("check_inst.json", fixtures::dorm4_json());
    const auto matching = spit("check_m.json", R"({
        "pairs": [["Ayse", "Duru"], ["Buse", "Cem"]],
        "singles": []
    })");
    const CliResult r =
        run_cli("check --input " + inst.string() + " --matching " + matching.string());
    CHECK(r.exit_code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK_FALSE(report["stable"].get<bool>());
    REQUIRE(report["blocking_pairs"].size() == 1);
    CHECK(report["blocking_pairs"][0][0] == "Buse");
    CHECK(report["blocking_pairs"][0][1] == "Duru");
    CHECK(report["valid"].get<bool>());
    CHECK(report["objective"].size() == 5);
}

TEST_CASE("solve streams improvement events and writes a stable document") {
    const auto inst = spit("solve_inst.json", fixtures::dorm4_json());
    const fs::path out = tmp_dir() / "solve_out.json";
    const CliResult r = run_cli("solve --mode optimize --input " + inst.string() + " --output " +
                                out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("t=") != std::string::npos);
    CHECK(r.err.find("vector=[") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["stable"].get<bool>());
    CHECK(doc["objective"] == nlohmann::json::parse("[1,2,4,2,4]"));
    REQUIRE(doc["pairs"].size() == 2);
    CHECK(doc["singles"].empty());
}

TEST_CASE("exit codes") {
    SUBCASE("unsat instance exits 10") {
        const auto inst = spit("cycle.json", fixtures::cycle3_json());
        CHECK(run_cli("solve --mode decision --input " + inst.string()).exit_code == 10);
    }
    SUBCASE("unreadable input exits 3") {
        CHECK(run_cli("solve --input /nonexistent/x.json").exit_code == 3);
    }
    SUBCASE("malformed document exits 3") {
        const auto inst = spit("bad.json", "{\"agents\": [");
        CHECK(run_cli("solve --input " + inst.string()).exit_code == 3);
    }
    SUBCASE("unknown flag exits 2") {
        CHECK(run_cli("solve --frobnicate").exit_code == 2);
    }
    SUBCASE("missing subcommand exits 2") {
        CHECK(run_cli("").exit_code == 2);
    }
    SUBCASE("tight time limit on a large optimize run exits 11") {
        const srti::Instance big = srti::attach_random_criteria(
            srti::generate_srti(220, 0.6, 12), srti::CriteriaGenOptions{.count = 3}, 5);
        srti::ObjectiveConfig obj;
        for (int c = 0; c < 3; ++c) obj.levels.push_back({srti::LevelKind::criterion, c});
        const auto inst = spit("big.json", srti::serialize_instance(big, obj));
        const CliResult r = run_cli("solve --mode optimize --time-limit 0.05 --input " +
                                    inst.string() + " --output " +
                                    (tmp_dir() / "big_out.json").string());
        CHECK(r.exit_code == 11);
    }
}

TEST_CASE("generate is deterministic per seed and honors count") {
    const fs::path dir = tmp_dir() / "ens";
    const std::string flags = " --agents 9 --edge-prob 0.4 --criteria 2 --seed 11 --count 3 "
                              "--output " + dir.string();
    REQUIRE(run_cli("generate" + flags).exit_code == 0);
    const std::string first = slurp(dir / "instance_11.json");
    REQUIRE(run_cli("generate" + flags).exit_code == 0);
    CHECK(slurp(dir / "instance_11.json") == first);
    CHECK(fs::exists(dir / "instance_12.json"));
    CHECK(fs::exists(dir / "instance_13.json"));
    const srti::Instance inst = srti::parse_instance(first);
    CHECK(inst.size() == 9);
    CHECK(inst.has_criteria());
}

TEST_CASE("bench emits the pinned CSV schema") {
    const CliResult r = run_cli(
        "bench --sizes 6,8 --degrees 50 --criteria 2 --count 2 --seed 3 --mode decision");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "seed,n,degree,m,mode,outcome,time_s,vector,completeness");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row)) {
        if (row.empty()) continue;
        CHECK(row.find(",decision,") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("emit-asp writes a program that validates") {
    const auto inst = spit("emit_inst.json", fixtures::dorm4_json());
    const CliResult r = run_cli("emit-asp --input " + inst.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("prefer2(duru,cem,buse).") != std::string::npos);
    CHECK(r.out.find("[1@5,X,Y]") != std::string::npos);  // embedded objective block applies
    CHECK_FALSE(srti::asp::validate_program(r.out).has_value());
}

TEST_CASE("derive honors the list-order flags") {
    const auto inst = spit("derive_inst.json", fixtures::dorm4_json());
    const CliResult explicit_first = run_cli("derive --input " + inst.string());
    CHECK(explicit_first.out.find("Duru: Cem Buse Ayse") != std::string::npos);
    const CliResult criteria_first =
        run_cli("derive --criteria-first --input " + inst.string());
    CHECK(criteria_first.out.find("Duru: Buse Ayse Cem") != std::string::npos);
}
