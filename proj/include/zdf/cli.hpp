#pragma once

// Command layer shared by the zdf binary and the tests: a RunConfig
// describes one invocation, run_command executes it and returns the exit
// code plus the rendered output.
//
// Exit codes: 0 success/PASS, 1 verification FAIL, 2 invalid input.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zdf/families.hpp"

namespace zdf {

enum class Command { Construct, Verify, Spectrum, Scan, Table };
enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
    Command command = Command::Spectrum;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::string> out_path;
    Int brute_bound = 4096;

    std::optional<std::string> family;
    std::map<std::string, Int> family_params;  // p, k, s, t, m, p1, p2, s1, t1, s2, t2
    std::optional<Int> seed_generator;

    std::optional<Int> n;
    std::optional<Int> e;
    std::optional<Int> n_min;
    std::optional<Int> n_max;

    // Extra assertions for verify: FAIL (exit 1) when the measured values differ.
    std::optional<Int> expect_m;
    std::optional<std::vector<Int>> expect_spectrum;
};

struct ScanRecord {
    Int n;
    Int e;  // smallest generator of the subgroup
    Int k;  // subgroup order
    Int m;
    std::vector<Int> value_set;
    ZdfClass classification;
    std::optional<FamilyId> matched_family;
};

// One record per distinct cyclic unit subgroup of each Z_n in [n_min, n_max],
// deduplicated by element set and ordered by (n, smallest generator).
std::vector<ScanRecord> scan_range(Int n_min, Int n_max);

// The known family instance (if any) whose subgroup equals this one.
std::optional<FamilyId> match_family(const UnitSubgroup& subgroup);

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

// Executes the command; throws std::invalid_argument (exit 2 at the CLI
// boundary) on invalid input.
CommandResult run_command(const RunConfig& config);

}  // namespace zdf
