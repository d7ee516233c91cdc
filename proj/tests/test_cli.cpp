#include <cstdio>
#include <map>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "zdf/cli.hpp"

using namespace zdf;
using nlohmann::json;

namespace {

struct ProcessResult {
    int exit_code;
    std::string output;
};

// Runs the installed CLI binary through the shell and captures stdout.
ProcessResult run_cli(const std::string& args) {
    const std::string command = std::string(ZDF_CLI_BINARY) + " " + args;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

json parse_output(const CommandResult& result) { return json::parse(result.output); }

RunConfig base(Command command) {
    RunConfig config;
    config.command = command;
    return config;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("construct emits the descriptor, subgroup, cosets and table") {
    RunConfig config = base(Command::Construct);
    config.family = "p-squared";
    config.family_params["p"] = 3;
    const CommandResult result = run_command(config);
    CHECK(result.exit_code == 0);
    const json doc = parse_output(result);
    CHECK(doc["schema_version"] == "1");
    CHECK(doc["command"] == "construct");
    const json& row = doc["results"]["constructions"][0];
    CHECK(row["e"] == 2);
    CHECK(row["n"] == 9);
    CHECK(row["predicted_m"] == 3);
    CHECK(row["predicted_S"] == json::array({3, 7}));
    CHECK(row["subgroup"] == json::array({1, 2, 4, 5, 7, 8}));
    CHECK(row["cosets"] == json::parse("[[0],[1,2,4,5,7,8],[3,6]]"));
    CHECK(row["table"] == json::array({0, 1, 1, 2, 1, 1, 2, 1, 1}));
    CHECK(row["m"] == 3);
}

TEST_CASE("construct rejects bad parameters with a named precondition") {
    RunConfig config = base(Command::Construct);
    config.family = "p-squared";
    config.family_params["p"] = 4;
    CHECK_THROWS_WITH_AS(run_command(config),
                         "p-squared family requires p to be an odd prime",
                         std::invalid_argument);

    config.family_params.erase("p");
    CHECK_THROWS_AS(run_command(config), std::invalid_argument);
}

TEST_CASE("verify over a family reports PASS per row") {
    RunConfig config = base(Command::Verify);
    config.family = "z4";
    const CommandResult result = run_command(config);
    CHECK(result.exit_code == 0);
    const json doc = parse_output(result);
    const json& reports = doc["results"]["reports"];
    REQUIRE(reports.size() == 2);
    CHECK(reports[0]["n"] == 4);
    CHECK(reports[0]["measured_m"] == 4);
    CHECK(reports[0]["measured_S"] == json::array({0}));
    CHECK(reports[0]["verdict"] == "PASS");
    CHECK(reports[1]["measured_m"] == 3);
    CHECK(reports[1]["measured_S"] == json::array({0, 2}));
    CHECK(reports[1]["verdict"] == "PASS");
    CHECK(doc["results"]["verdict"] == "PASS");
}

TEST_CASE("verify over a raw (n, e) matches the family catalogue") {
    RunConfig config = base(Command::Verify);
    config.n = 9;
    config.e = 2;
    const CommandResult result = run_command(config);
    CHECK(result.exit_code == 0);
    const json report = parse_output(result)["results"]["report"];
    CHECK(report["m"] == 3);
    CHECK(report["S"] == json::array({3, 7}));
    CHECK(report["matched_family"] == "p-squared");
    CHECK(report["paths_agree"] == true);
    CHECK(report["verdict"] == "PASS");

    // A different generator of the same subgroup gives the identical spectrum.
    config.e = 5;
    const json other = parse_output(run_command(config))["results"]["report"];
    CHECK(other["S"] == report["S"]);
    CHECK(other["m"] == report["m"]);
    CHECK(other["smallest_generator"] == 2);
    CHECK(other["matched_family"] == "p-squared");
}

TEST_CASE("verify expectations turn mismatches into FAIL") {
    RunConfig config = base(Command::Verify);
    config.family = "p-squared";
    config.family_params["p"] = 3;
    config.expect_m = 4;
    const CommandResult result = run_command(config);
    CHECK(result.exit_code == 1);
    const json doc = parse_output(result);
    CHECK(doc["results"]["verdict"] == "FAIL");
    CHECK(doc["results"]["reports"][0]["verdict"] == "FAIL");

    config.expect_m = 3;
    CHECK(run_command(config).exit_code == 0);
}

TEST_CASE("spectrum output is a stable golden document") {
    RunConfig config = base(Command::Spectrum);
    config.n = 4;
    config.e = 3;
    const CommandResult result = run_command(config);
    CHECK(result.exit_code == 0);
    const std::string expected = R"({
  "command": "spectrum",
  "inputs": {
    "brute_bound": 4096,
    "e": 3,
    "n": 4
  },
  "results": {
    "S": [
      0,
      2
    ],
    "classification": "nontrivial-ZDF",
    "counts": [
      0,
      2,
      0
    ],
    "e": 3,
    "m": 3,
    "n": 4
  },
  "schema_version": "1"
}
)";
    CHECK(result.output == expected);
}

TEST_CASE("spectrum counts for the crt instance on Z_10") {
    RunConfig config = base(Command::Spectrum);
    config.n = 10;
    config.e = 9;
    const json results = parse_output(run_command(config))["results"];
    CHECK(results["counts"] == json::array({0, 2, 0, 2, 0, 2, 0, 2, 0}));
    CHECK(results["S"] == json::array({0, 2}));
}

TEST_CASE("json output round-trips byte for byte") {
    for (const char* args : {"spectrum", "verify", "scan", "table", "construct"}) {
        RunConfig config;
        if (std::string(args) == "spectrum") {
            config = base(Command::Spectrum);
            config.n = 9;
            config.e = 2;
        } else if (std::string(args) == "verify") {
            config = base(Command::Verify);
            config.family = "two-power";
            config.family_params["k"] = 3;
        } else if (std::string(args) == "scan") {
            config = base(Command::Scan);
            config.n_min = 2;
            config.n_max = 16;
        } else if (std::string(args) == "table") {
            config = base(Command::Table);
        } else {
            config = base(Command::Construct);
            config.family = "mp-crt";
            for (const auto& [key, value] :
                 std::map<std::string, Int>{{"m", 2}, {"p", 5}, {"s", 2}, {"t", 2}}) {
                config.family_params[key] = value;
            }
        }
        const CommandResult result = run_command(config);
        CHECK(json::parse(result.output).dump(2) + "\n" == result.output);
    }
}

TEST_CASE("scan finds the expected records") {
    const auto records = scan_range(4, 4);
    REQUIRE(records.size() == 2);
    CHECK(records[0].e == 1);
    CHECK(records[0].k == 1);
    CHECK(records[0].m == 4);
    CHECK(records[0].value_set == std::vector<Int>{0});
    CHECK(records[0].classification == ZdfClass::Zdbf);
    CHECK(records[0].matched_family == FamilyId::Z4);
    CHECK(records[1].e == 3);
    CHECK(records[1].m == 3);
    CHECK(records[1].value_set == std::vector<Int>{0, 2});
    CHECK(records[1].matched_family == FamilyId::Z4);

    bool found_zdbf_of_order_3 = false;
    for (const auto& record : scan_range(7, 7)) {
        if (record.k == 3) {
            found_zdbf_of_order_3 = true;
            CHECK(record.value_set == std::vector<Int>{2});
            CHECK(record.classification == ZdfClass::Zdbf);
        }
    }
    CHECK(found_zdbf_of_order_3);

    bool found_p_squared = false;
    bool found_plus_s = false;
    for (const auto& record : scan_range(9, 9)) {
        if (record.e == 2) {
            found_p_squared = true;
            CHECK(record.value_set == std::vector<Int>{3, 7});
            CHECK(record.matched_family == FamilyId::PSquared);
        }
        if (record.e == 4) {
            found_plus_s = true;
            CHECK(record.value_set == std::vector<Int>{0, 6});
            CHECK(record.matched_family == FamilyId::PPowerPlusS);
        }
    }
    CHECK(found_p_squared);
    CHECK(found_plus_s);
}

TEST_CASE("scan records one row per subgroup, not per generator") {
    // Z_9 has six units but only four distinct cyclic subgroups.
    const auto records = scan_range(9, 9);
    CHECK(records.size() == 4);
}

TEST_CASE("scan csv golden") {
    RunConfig config = base(Command::Scan);
    config.n_min = 4;
    config.n_max = 4;
    config.format = OutputFormat::Csv;
    const CommandResult result = run_command(config);
    CHECK(result.output ==
          "n,e,k,m,S,classification,family\n"
          "4,1,1,4,0,ZDBF,z4\n"
          "4,3,2,3,0|2,nontrivial-ZDF,z4\n");
}

TEST_CASE("scan is deterministic") {
    RunConfig config = base(Command::Scan);
    config.n_min = 2;
    config.n_max = 48;
    const CommandResult first = run_command(config);
    const CommandResult second = run_command(config);
    CHECK(first.output == second.output);
}

TEST_CASE("scan validates its range") {
    RunConfig config = base(Command::Scan);
    config.n_min = 5;
    config.n_max = 4;
    CHECK_THROWS_AS(run_command(config), std::invalid_argument);
    config.n_min = 2;
    config.n_max = 5000;  // beyond the default brute bound
    CHECK_THROWS_AS(run_command(config), std::invalid_argument);
}

TEST_CASE("table verifies all seven rows") {
    const CommandResult result = run_command(base(Command::Table));
    CHECK(result.exit_code == 0);
    const json doc = parse_output(result);
    const json& reports = doc["results"]["reports"];
    REQUIRE(reports.size() == 7);
    for (const auto& report : reports) CHECK(report["verdict"] == "PASS");
    CHECK(reports[1]["family"] == "two-power");
    CHECK(reports[1]["measured_m"] == 5);
    CHECK(reports[2]["measured_S"] == json::array({3, 7}));
    CHECK(reports[3]["measured_S"] == json::array({1, 3, 19}));
}

TEST_CASE("binary exit codes follow the 0/1/2 contract") {
    CHECK(run_cli("verify --family z4 2>/dev/null").exit_code == 0);
    CHECK(run_cli("verify --family p-squared --p 3 --expect-m 4 2>/dev/null").exit_code == 1);
    CHECK(run_cli("construct --family p-squared --p 4 2>/dev/null").exit_code == 2);
    CHECK(run_cli("spectrum --n 6 --e 4 2>/dev/null").exit_code == 2);
    CHECK(run_cli("scan --n-min 5 --n-max 4 2>/dev/null").exit_code == 2);
    CHECK(run_cli("spectrum --n 6 --no-such-flag 2>/dev/null").exit_code == 2);
    CHECK(run_cli("2>/dev/null").exit_code == 2);

    const ProcessResult error = run_cli("construct --family p-squared --p 4 2>&1");
    CHECK(error.output.find("odd prime") != std::string::npos);
}

TEST_CASE("binary writes to --out and produces identical bytes") {
    const std::string path = "/tmp/zdf_cli_out_test.json";
    const ProcessResult to_file =
        run_cli("spectrum --n 4 --e 3 --out " + path + " 2>/dev/null && cat " + path);
    const ProcessResult direct = run_cli("spectrum --n 4 --e 3 2>/dev/null");
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output == direct.output);
    std::remove(path.c_str());
}

TEST_CASE("seed generator override reaches the crt families") {
    const ProcessResult ok =
        run_cli("construct --family mp-crt --m 2 --p 5 --s 2 --t 2 --seed-generator 3 "
                "2>/dev/null");
    CHECK(ok.exit_code == 0);
    const json row = json::parse(ok.output)["results"]["constructions"][0];
    CHECK(row["parameters"]["g"] == 3);
    CHECK(row["e"] == 9);

    const ProcessResult bad =
        run_cli("construct --family mp-crt --m 2 --p 5 --s 2 --t 2 --seed-generator 4 "
                "2>/dev/null");
    CHECK(bad.exit_code == 2);
}

TEST_SUITE_END();
