// zdf: construct coset index functions over Z_n, compute their
// zero-difference spectra, and verify the closed-form family predictions
// against brute force.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zdf/cli.hpp"

namespace {

struct Options {
    zdf::RunConfig config;
    std::optional<zdf::Int> p, k, s, t, m, p1, p2, s1, t1, s2, t2;
    std::vector<zdf::Int> expect_spectrum;
    bool expect_spectrum_given = false;
};

void add_common(CLI::App* cmd, Options& opts, std::string& emit) {
    cmd->add_option("--emit", emit, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", opts.config.out_path, "write output to this file instead of stdout");
    cmd->add_option("--brute-bound", opts.config.brute_bound,
                    "largest n for the O(n^2) direct cross-check");
}

void add_family_options(CLI::App* cmd, Options& opts) {
    cmd->add_option("--family", opts.config.family,
                    "z4 | two-power | p-squared | p-power-minus | p-power-plus-s | mp-crt | "
                    "p1p2-crt");
    cmd->add_option("--p", opts.p);
    cmd->add_option("--k", opts.k);
    cmd->add_option("--s", opts.s);
    cmd->add_option("--t", opts.t);
    cmd->add_option("--m", opts.m);
    cmd->add_option("--p1", opts.p1);
    cmd->add_option("--p2", opts.p2);
    cmd->add_option("--s1", opts.s1);
    cmd->add_option("--t1", opts.t1);
    cmd->add_option("--s2", opts.s2);
    cmd->add_option("--t2", opts.t2);
    cmd->add_option("--seed-generator", opts.config.seed_generator,
                    "override the primitive root used by the CRT families");
}

void collect_params(Options& opts) {
    auto put = [&](const char* name, const std::optional<zdf::Int>& value) {
        if (value) opts.config.family_params[name] = *value;
    };
    put("p", opts.p);
    put("k", opts.k);
    put("s", opts.s);
    put("t", opts.t);
    put("m", opts.m);
    put("p1", opts.p1);
    put("p2", opts.p2);
    put("s1", opts.s1);
    put("t1", opts.t1);
    put("s2", opts.s2);
    put("t2", opts.t2);
    if (opts.expect_spectrum_given) opts.config.expect_spectrum = opts.expect_spectrum;
}

zdf::OutputFormat parse_format(const std::string& emit) {
    if (emit == "csv") return zdf::OutputFormat::Csv;
    if (emit == "text") return zdf::OutputFormat::Text;
    return zdf::OutputFormat::Json;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coset index functions over Z_n and their zero-difference spectra"};
    app.require_subcommand(1);

    Options opts;
    std::string emit = "json";

    CLI::App* construct = app.add_subcommand("construct", "build a family instance");
    add_family_options(construct, opts);
    add_common(construct, opts, emit);

    CLI::App* verify =
        app.add_subcommand("verify", "check predictions (or a raw subgroup) against brute force");
    add_family_options(verify, opts);
    verify->add_option("--n", opts.config.n);
    verify->add_option("--e", opts.config.e);
    verify->add_option("--expect-m", opts.config.expect_m, "fail unless the measured m equals this");
    verify
        ->add_option("--expect-S", opts.expect_spectrum,
                     "fail unless the measured S equals this comma-separated set")
        ->delimiter(',');
    add_common(verify, opts, emit);

    CLI::App* spectrum = app.add_subcommand("spectrum", "per-shift collision counts for (n, e)");
    spectrum->add_option("--n", opts.config.n);
    spectrum->add_option("--e", opts.config.e);
    add_common(spectrum, opts, emit);

    CLI::App* scan =
        app.add_subcommand("scan", "all distinct cyclic unit subgroups over a range of n");
    scan->add_option("--n-min", opts.config.n_min);
    scan->add_option("--n-max", opts.config.n_max);
    add_common(scan, opts, emit);

    CLI::App* table = app.add_subcommand("table", "verify every family at its smallest parameters");
    add_common(table, opts, emit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    opts.expect_spectrum_given = verify->count("--expect-S") > 0;
    collect_params(opts);
    opts.config.format = parse_format(emit);
    if (construct->parsed()) opts.config.command = zdf::Command::Construct;
    if (verify->parsed()) opts.config.command = zdf::Command::Verify;
    if (spectrum->parsed()) opts.config.command = zdf::Command::Spectrum;
    if (scan->parsed()) opts.config.command = zdf::Command::Scan;
    if (table->parsed()) opts.config.command = zdf::Command::Table;

    zdf::CommandResult result;
    try {
        result = zdf::run_command(opts.config);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 70;
    }

    if (opts.config.out_path) {
        std::ofstream out(*opts.config.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << *opts.config.out_path << "'\n";
            return 2;
        }
        out << result.output;
    } else {
        std::cout << result.output;
    }
    return result.exit_code;
}
