#include "zdf/cli.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace zdf {

namespace {

using nlohmann::json;

// Largest n for which commands materialize length-n tables and coset lists.
constexpr Int kMaterializeLimit = Int{1} << 24;

[[noreturn]] void reject(const std::string& message) {
    throw std::invalid_argument(message);
}

std::string format_set(const std::vector<Int>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out + "}";
}

std::string pipe_joined(const std::vector<Int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += "|";
        out += std::to_string(values[i]);
    }
    return out;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

json envelope(const std::string& command, json inputs, json results) {
    return json{{"schema_version", "1"},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)}};
}

// ---------------------------------------------------------------------------
// Family instance selection and matching

Int require_param(const RunConfig& config, const std::string& name) {
    auto it = config.family_params.find(name);
    if (it == config.family_params.end()) {
        reject("family '" + *config.family + "' requires --" + name);
    }
    return it->second;
}

std::vector<FamilyDescriptor> descriptors_from_config(const RunConfig& config) {
    if (!config.family) reject("no family selected");
    const auto id = family_from_name(*config.family);
    if (!id) reject("unknown family '" + *config.family + "'");
    switch (*id) {
        case FamilyId::Z4:
            return family_z4();
        case FamilyId::TwoPower:
            return {family_two_power(require_param(config, "k"))};
        case FamilyId::PSquared:
            return {family_p_squared(require_param(config, "p"))};
        case FamilyId::PPowerMinus:
            return {family_p_power_minus(require_param(config, "p"), require_param(config, "k"))};
        case FamilyId::PPowerPlusS:
            return {family_p_power_plus_s(require_param(config, "p"), require_param(config, "k"),
                                          require_param(config, "s"))};
        case FamilyId::MpCrt:
            return {family_mp_crt(require_param(config, "m"), require_param(config, "p"),
                                  require_param(config, "s"), require_param(config, "t"),
                                  config.seed_generator)};
        case FamilyId::P1P2Crt:
            return {family_p1p2_crt(require_param(config, "p1"), require_param(config, "p2"),
                                    require_param(config, "s1"), require_param(config, "t1"),
                                    require_param(config, "s2"), require_param(config, "t2"),
                                    config.seed_generator, config.seed_generator)};
    }
    reject("unknown family");
}

// Every known family instance living on Z_n, in match priority order.
std::vector<FamilyDescriptor> candidate_descriptors(Int n) {
    std::vector<FamilyDescriptor> out;
    if (n == 4) {
        for (auto& d : family_z4()) out.push_back(std::move(d));
    }
    const auto factors = factorize(n);
    if (factors.size() == 1) {
        const Int p = factors[0].first;
        const Int k = factors[0].second;
        if (p == 2 && k > 2) out.push_back(family_two_power(k));
        if (p >= 3 && k == 2) out.push_back(family_p_squared(p));
        if (p >= 3 && k > 2) out.push_back(family_p_power_minus(p, k));
        for (Int s = 1; 2 * s <= k; ++s) out.push_back(family_p_power_plus_s(p, k, s));
    }
    for (const auto& [p, exp] : factors) {
        if (exp != 1 || n / p < 2) continue;
        for (Int s : divisors(p - 1)) {
            out.push_back(family_mp_crt(n / p, p, s, (p - 1) / s));
        }
    }
    if (factors.size() == 2 && factors[0].second == 1 && factors[1].second == 1) {
        const Int p1 = factors[0].first;
        const Int p2 = factors[1].first;
        for (Int s1 : divisors(p1 - 1)) {
            for (Int s2 : divisors(p2 - 1)) {
                out.push_back(
                    family_p1p2_crt(p1, p2, s1, (p1 - 1) / s1, s2, (p2 - 1) / s2));
            }
        }
    }
    return out;
}

std::optional<FamilyId> match_against(const std::vector<std::pair<FamilyId, std::vector<Int>>>&
                                          candidates,
                                      const UnitSubgroup& subgroup) {
    for (const auto& [family, elements] : candidates) {
        if (elements == subgroup.elements) return family;
    }
    return std::nullopt;
}

std::vector<std::pair<FamilyId, std::vector<Int>>> candidate_subgroups(Int n) {
    std::vector<std::pair<FamilyId, std::vector<Int>>> out;
    const ResidueRing ring(n);
    for (const auto& d : candidate_descriptors(n)) {
        out.emplace_back(d.family, build_subgroup(d.generator, ring).elements);
    }
    return out;
}

std::vector<UnitSubgroup> distinct_subgroups(const ResidueRing& ring) {
    std::vector<UnitSubgroup> result;
    std::set<std::vector<Int>> seen;
    const Int n = ring.modulus();
    for (Int e = 1; e < n; ++e) {
        if (std::gcd(e, n) != 1) continue;
        UnitSubgroup subgroup = build_subgroup(e, ring);
        if (seen.insert(subgroup.elements).second) result.push_back(std::move(subgroup));
    }
    return result;
}

Int smallest_generator(const UnitSubgroup& subgroup) {
    for (Int g : subgroup.elements) {
        Int order = 1;
        for (Int x = g; x != 1; x = subgroup.ring.mul(x, g)) ++order;
        if (order == subgroup.order) return g;
    }
    return subgroup.generator;
}

// ---------------------------------------------------------------------------
// Serialization helpers

json descriptor_json(const FamilyDescriptor& d) {
    json params = json::object();
    for (const auto& [key, value] : d.parameters) params[key] = value;
    json per_class = json::array();
    for (const auto& cls : d.per_class) {
        per_class.push_back(json{{"class", cls.label}, {"count", cls.expected}});
    }
    return json{{"family", family_name(d.family)}, {"parameters", params},
                {"e", d.generator},              {"n", d.predicted_n},
                {"predicted_m", d.predicted_m},  {"predicted_S", d.predicted_spectrum},
                {"per_class", per_class}};
}

json report_json(const VerificationReport& r) {
    json j = descriptor_json(r.descriptor);
    j["verdict"] = to_string(r.verdict);
    j["mismatch_detail"] = r.mismatch_detail;
    j["notes"] = r.notes;
    if (r.verdict != Verdict::UnverifiableAtScale) {
        j["measured_m"] = r.measured_m;
        j["measured_S"] = r.measured_spectrum;
        j["paths_agree"] = r.paths_agree;
        j["per_class_match"] = r.per_class_match;
    }
    return j;
}

std::string params_text(const FamilyDescriptor& d) {
    std::string out;
    for (const auto& [key, value] : d.parameters) {
        if (!out.empty()) out += " ";
        out += key + "=" + std::to_string(value);
    }
    return out;
}

void report_text(std::ostringstream& out, const VerificationReport& r) {
    const auto& d = r.descriptor;
    out << "family: " << family_name(d.family);
    if (!d.parameters.empty()) out << " (" << params_text(d) << ")";
    out << "  n=" << d.predicted_n << " e=" << d.generator << "\n";
    out << "  predicted: m=" << d.predicted_m << " S=" << format_set(d.predicted_spectrum)
        << "\n";
    if (r.verdict == Verdict::UnverifiableAtScale) {
        out << "  " << r.mismatch_detail << "\n";
    } else {
        out << "  measured:  m=" << r.measured_m << " S=" << format_set(r.measured_spectrum)
            << "\n";
        out << "  paths agree: " << (r.paths_agree ? "yes" : "NO") << ", per-class "
            << (r.per_class_match ? "ok" : "MISMATCH") << "\n";
        if (!r.mismatch_detail.empty()) out << "  detail: " << r.mismatch_detail << "\n";
    }
    for (const auto& note : r.notes) out << "  note: " << note << "\n";
    out << "  verdict: " << to_string(r.verdict) << "\n";
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
    std::string out = "family,n,e,predicted_m,predicted_S,measured_m,measured_S,verdict\n";
    for (const auto& r : reports) {
        const auto& d = r.descriptor;
        out += family_name(d.family) + "," + std::to_string(d.predicted_n) + "," +
               std::to_string(d.generator) + "," + std::to_string(d.predicted_m) + "," +
               pipe_joined(d.predicted_spectrum) + ",";
        if (r.verdict == Verdict::UnverifiableAtScale) {
            out += ",";
        } else {
            out += std::to_string(r.measured_m) + "," + pipe_joined(r.measured_spectrum);
        }
        out += "," + to_string(r.verdict) + "\n";
    }
    return out;
}

std::string render_reports(const RunConfig& config, const std::string& command,
                           const json& inputs, const std::vector<VerificationReport>& reports) {
    Verdict overall = Verdict::Pass;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Fail) overall = Verdict::Fail;
        if (r.verdict == Verdict::UnverifiableAtScale && overall == Verdict::Pass) {
            overall = Verdict::UnverifiableAtScale;
        }
    }
    switch (config.format) {
        case OutputFormat::Json: {
            json rows = json::array();
            for (const auto& r : reports) rows.push_back(report_json(r));
            return dump_json(envelope(command, inputs,
                                      json{{"reports", rows},
                                           {"verdict", to_string(overall)}}));
        }
        case OutputFormat::Csv:
            return reports_csv(reports);
        case OutputFormat::Text: {
            std::ostringstream out;
            for (const auto& r : reports) report_text(out, r);
            out << "overall: " << to_string(overall) << "\n";
            return out.str();
        }
    }
    return {};
}

json inputs_json(const RunConfig& config) {
    json inputs = json::object();
    inputs["brute_bound"] = config.brute_bound;
    if (config.family) {
        inputs["family"] = *config.family;
        json params = json::object();
        for (const auto& [key, value] : config.family_params) params[key] = value;
        inputs["params"] = params;
    }
    if (config.seed_generator) inputs["seed_generator"] = *config.seed_generator;
    if (config.n) inputs["n"] = *config.n;
    if (config.e) inputs["e"] = *config.e;
    if (config.n_min) inputs["n_min"] = *config.n_min;
    if (config.n_max) inputs["n_max"] = *config.n_max;
    if (config.expect_m) inputs["expect_m"] = *config.expect_m;
    if (config.expect_spectrum) inputs["expect_S"] = *config.expect_spectrum;
    return inputs;
}

// Fold the --expect-m / --expect-S assertions into a report.
void apply_expectations(const RunConfig& config, VerificationReport& report) {
    if (report.verdict == Verdict::UnverifiableAtScale) return;
    std::vector<std::string> problems;
    if (config.expect_m && *config.expect_m != report.measured_m) {
        problems.push_back("expected m = " + std::to_string(*config.expect_m) + ", measured " +
                           std::to_string(report.measured_m));
    }
    if (config.expect_spectrum) {
        std::vector<Int> expected = *config.expect_spectrum;
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        if (expected != report.measured_spectrum) {
            problems.push_back("expected S = " + format_set(expected) + ", measured " +
                               format_set(report.measured_spectrum));
        }
    }
    for (const auto& problem : problems) {
        report.verdict = Verdict::Fail;
        if (!report.mismatch_detail.empty()) report.mismatch_detail += "; ";
        report.mismatch_detail += problem;
    }
}

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_construct(const RunConfig& config) {
    const auto descriptors = descriptors_from_config(config);
    json rows = json::array();
    std::ostringstream text;
    std::string csv;
    for (const auto& d : descriptors) {
        if (d.predicted_n > kMaterializeLimit) {
            reject("n = " + std::to_string(d.predicted_n) +
                   " is too large to materialize the full table (limit " +
                   std::to_string(kMaterializeLimit) + ")");
        }
        const ResidueRing ring(d.predicted_n);
        const UnitSubgroup subgroup = build_subgroup(d.generator, ring);
        const CosetPartition partition = build_partition(subgroup);
        const CosetIndexFunction f = build_coset_index_function(partition);

        json row = descriptor_json(d);
        row["subgroup"] = subgroup.elements;
        row["subgroup_order"] = subgroup.order;
        row["cosets"] = partition.cosets;
        row["table"] = f.table;
        row["m"] = f.image_size;
        rows.push_back(std::move(row));

        text << "family: " << family_name(d.family);
        if (!d.parameters.empty()) text << " (" << params_text(d) << ")";
        text << "\n"
             << "n: " << d.predicted_n << "\ne: " << d.generator << "\npredicted: m="
             << d.predicted_m << " S=" << format_set(d.predicted_spectrum) << "\n";
        text << "subgroup (order " << subgroup.order << "):";
        for (Int g : subgroup.elements) text << " " << g;
        text << "\ncosets (m=" << f.image_size << "):\n";
        for (std::size_t i = 0; i < partition.cosets.size(); ++i) {
            text << "  " << i << ":";
            for (Int x : partition.cosets[i]) text << " " << x;
            text << "\n";
        }
        text << "table:";
        for (Int v : f.table) text << " " << v;
        text << "\n";

        csv += "x,fx\n";
        for (Int x = 0; x < d.predicted_n; ++x) {
            csv += std::to_string(x) + "," + std::to_string(f.table[static_cast<std::size_t>(x)]) +
                   "\n";
        }
    }
    switch (config.format) {
        case OutputFormat::Json:
            return {0, dump_json(envelope("construct", inputs_json(config),
                                          json{{"constructions", rows}}))};
        case OutputFormat::Csv:
            return {0, csv};
        case OutputFormat::Text:
            return {0, text.str()};
    }
    return {0, {}};
}

CommandResult cmd_verify_family(const RunConfig& config) {
    auto descriptors = descriptors_from_config(config);
    std::vector<VerificationReport> reports;
    reports.reserve(descriptors.size());
    for (const auto& d : descriptors) {
        VerificationReport report = verify_family(d, config.brute_bound);
        apply_expectations(config, report);
        reports.push_back(std::move(report));
    }
    const bool failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
        return r.verdict == Verdict::Fail;
    });
    return {failed ? 1 : 0, render_reports(config, "verify", inputs_json(config), reports)};
}

CommandResult cmd_verify_subgroup(const RunConfig& config) {
    const Int n = *config.n;
    if (n < 2) reject("n must be at least 2");
    if (n > kMaterializeLimit) {
        reject("n = " + std::to_string(n) + " is too large (limit " +
               std::to_string(kMaterializeLimit) + ")");
    }
    const ResidueRing ring(n);
    const UnitSubgroup subgroup = build_subgroup(*config.e, ring);
    const ZdfSpectrum unions = spectrum_via_unions(subgroup);

    const bool direct_checked = n <= config.brute_bound;
    bool paths_agree = true;
    if (direct_checked) {
        const CosetIndexFunction f = build_coset_index_function(build_partition(subgroup));
        const ZdfSpectrum direct = spectrum_direct(f);
        paths_agree = direct.shift_counts == unions.shift_counts &&
                      direct.image_size == unions.image_size;
    }

    const auto matched = match_against(candidate_subgroups(n), subgroup);
    const Int canonical_e = smallest_generator(subgroup);

    std::vector<std::string> problems;
    if (!paths_agree) problems.push_back("direct and union-of-solutions spectra disagree");
    if (config.expect_m && *config.expect_m != unions.image_size) {
        problems.push_back("expected m = " + std::to_string(*config.expect_m) + ", measured " +
                           std::to_string(unions.image_size));
    }
    if (config.expect_spectrum) {
        std::vector<Int> expected = *config.expect_spectrum;
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        if (expected != unions.value_set) {
            problems.push_back("expected S = " + format_set(expected) + ", measured " +
                               format_set(unions.value_set));
        }
    }
    const bool pass = problems.empty();

    switch (config.format) {
        case OutputFormat::Json: {
            json report{{"n", n},
                        {"e", *config.e},
                        {"smallest_generator", canonical_e},
                        {"k", subgroup.order},
                        {"m", unions.image_size},
                        {"S", unions.value_set},
                        {"classification", to_string(unions.classification)},
                        {"matched_family",
                         matched ? json(family_name(*matched)) : json(nullptr)},
                        {"direct_check", direct_checked ? "ok" : "skipped"},
                        {"paths_agree", paths_agree},
                        {"problems", problems},
                        {"verdict", pass ? "PASS" : "FAIL"}};
            return {pass ? 0 : 1,
                    dump_json(envelope("verify", inputs_json(config), json{{"report", report}}))};
        }
        case OutputFormat::Csv: {
            std::string out = "n,e,k,m,S,classification,family,direct_check,verdict\n";
            out += std::to_string(n) + "," + std::to_string(*config.e) + "," +
                   std::to_string(subgroup.order) + "," + std::to_string(unions.image_size) +
                   "," + pipe_joined(unions.value_set) + "," + to_string(unions.classification) +
                   "," + (matched ? family_name(*matched) : "") + "," +
                   (direct_checked ? "ok" : "skipped") + "," + (pass ? "PASS" : "FAIL") + "\n";
            return {pass ? 0 : 1, out};
        }
        case OutputFormat::Text: {
            std::ostringstream out;
            out << "n=" << n << " e=" << *config.e << " (subgroup generated by " << canonical_e
                << ", order " << subgroup.order << ")\n";
            out << "measured: m=" << unions.image_size << " S=" << format_set(unions.value_set)
                << " classification=" << to_string(unions.classification) << "\n";
            out << "matched family: " << (matched ? family_name(*matched) : "-") << "\n";
            out << "direct cross-check: "
                << (direct_checked ? (paths_agree ? "ok" : "DISAGREES") : "skipped") << "\n";
            for (const auto& problem : problems) out << "problem: " << problem << "\n";
            out << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
            return {pass ? 0 : 1, out.str()};
        }
    }
    return {0, {}};
}

CommandResult cmd_spectrum(const RunConfig& config) {
    if (!config.n || !config.e) reject("spectrum requires --n and --e");
    const Int n = *config.n;
    if (n < 2) reject("n must be at least 2");
    if (n > kMaterializeLimit) {
        reject("n = " + std::to_string(n) + " is too large (limit " +
               std::to_string(kMaterializeLimit) + ")");
    }
    const ResidueRing ring(n);
    const UnitSubgroup subgroup = build_subgroup(*config.e, ring);
    const ZdfSpectrum spectrum = spectrum_via_unions(subgroup);
    if (n <= config.brute_bound) {
        const CosetIndexFunction f = build_coset_index_function(build_partition(subgroup));
        const ZdfSpectrum direct = spectrum_direct(f);
        if (direct.shift_counts != spectrum.shift_counts) {
            throw std::logic_error("direct and union-of-solutions spectra disagree");
        }
    }
    switch (config.format) {
        case OutputFormat::Json: {
            json results{{"n", n},
                         {"e", *config.e},
                         {"m", spectrum.image_size},
                         {"counts", spectrum.shift_counts},
                         {"S", spectrum.value_set},
                         {"classification", to_string(spectrum.classification)}};
            return {0, dump_json(envelope("spectrum", inputs_json(config), results))};
        }
        case OutputFormat::Csv: {
            std::string out = "a,N\n";
            for (Int a = 1; a < n; ++a) {
                out += std::to_string(a) + "," + std::to_string(spectrum.count_for(a)) + "\n";
            }
            return {0, out};
        }
        case OutputFormat::Text: {
            std::ostringstream out;
            out << "n=" << n << " e=" << *config.e << " m=" << spectrum.image_size
                << " classification=" << to_string(spectrum.classification) << "\n";
            for (Int a = 1; a < n; ++a) {
                out << "a=" << a << ": " << spectrum.count_for(a) << "\n";
            }
            out << "S=" << format_set(spectrum.value_set) << "\n";
            return {0, out.str()};
        }
    }
    return {0, {}};
}

CommandResult cmd_scan(const RunConfig& config) {
    if (!config.n_min || !config.n_max) reject("scan requires --n-min and --n-max");
    const Int n_min = *config.n_min;
    const Int n_max = *config.n_max;
    if (n_min < 2 || n_min > n_max || n_max > config.brute_bound) {
        reject("scan range must satisfy 2 <= n-min <= n-max <= brute-bound (" +
               std::to_string(config.brute_bound) + ")");
    }
    const auto records = scan_range(n_min, n_max);
    switch (config.format) {
        case OutputFormat::Json: {
            json rows = json::array();
            for (const auto& r : records) {
                rows.push_back(json{{"n", r.n},
                                    {"e", r.e},
                                    {"k", r.k},
                                    {"m", r.m},
                                    {"S", r.value_set},
                                    {"classification", to_string(r.classification)},
                                    {"family", r.matched_family
                                                   ? json(family_name(*r.matched_family))
                                                   : json(nullptr)}});
            }
            return {0,
                    dump_json(envelope("scan", inputs_json(config), json{{"records", rows}}))};
        }
        case OutputFormat::Csv: {
            std::string out = "n,e,k,m,S,classification,family\n";
            for (const auto& r : records) {
                out += std::to_string(r.n) + "," + std::to_string(r.e) + "," +
                       std::to_string(r.k) + "," + std::to_string(r.m) + "," +
                       pipe_joined(r.value_set) + "," + to_string(r.classification) + "," +
                       (r.matched_family ? family_name(*r.matched_family) : "") + "\n";
            }
            return {0, out};
        }
        case OutputFormat::Text: {
            std::ostringstream out;
            for (const auto& r : records) {
                out << "n=" << r.n << " e=" << r.e << " k=" << r.k << " m=" << r.m
                    << " S=" << format_set(r.value_set) << " " << to_string(r.classification)
                    << " family=" << (r.matched_family ? family_name(*r.matched_family) : "-")
                    << "\n";
            }
            return {0, out.str()};
        }
    }
    return {0, {}};
}

CommandResult cmd_table(const RunConfig& config) {
    std::vector<FamilyDescriptor> rows;
    rows.push_back(family_z4()[1]);
    rows.push_back(family_two_power(3));
    rows.push_back(family_p_squared(3));
    rows.push_back(family_p_power_minus(3, 3));
    rows.push_back(family_p_power_plus_s(3, 2, 1));
    rows.push_back(family_mp_crt(2, 5, 2, 2));
    rows.push_back(family_p1p2_crt(5, 7, 2, 2, 3, 2));

    std::vector<VerificationReport> reports;
    reports.reserve(rows.size());
    for (const auto& d : rows) reports.push_back(verify_family(d, config.brute_bound));
    const bool failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
        return r.verdict == Verdict::Fail;
    });
    return {failed ? 1 : 0, render_reports(config, "table", inputs_json(config), reports)};
}

}  // namespace

std::vector<ScanRecord> scan_range(Int n_min, Int n_max) {
    std::vector<ScanRecord> records;
    for (Int n = n_min; n <= n_max; ++n) {
        const ResidueRing ring(n);
        const auto candidates = candidate_subgroups(n);
        for (const auto& subgroup : distinct_subgroups(ring)) {
            const ZdfSpectrum spectrum = spectrum_via_unions(subgroup);
            records.push_back({n, subgroup.generator, subgroup.order, spectrum.image_size,
                               spectrum.value_set, spectrum.classification,
                               match_against(candidates, subgroup)});
        }
    }
    return records;
}

std::optional<FamilyId> match_family(const UnitSubgroup& subgroup) {
    return match_against(candidate_subgroups(subgroup.ring.modulus()), subgroup);
}

CommandResult run_command(const RunConfig& config) {
    if (config.brute_bound < 2) reject("brute-bound must be at least 2");
    switch (config.command) {
        case Command::Construct:
            return cmd_construct(config);
        case Command::Verify:
            if (config.family && (config.n || config.e)) {
                reject("verify takes either --family or --n/--e, not both");
            }
            if (config.family) return cmd_verify_family(config);
            if (config.n && config.e) return cmd_verify_subgroup(config);
            reject("verify requires --family or both --n and --e");
        case Command::Spectrum:
            return cmd_spectrum(config);
        case Command::Scan:
            return cmd_scan(config);
        case Command::Table:
            return cmd_table(config);
    }
    reject("no command selected");
}

}  // namespace zdf
