#include "zdf/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace zdf {

namespace {

[[noreturn]] void reject(const std::string& message) {
    throw std::invalid_argument(message);
}

Int checked_pow(Int base, Int exponent) {
    unsigned __int128 acc = 1;
    for (Int i = 0; i < exponent; ++i) {
        acc *= static_cast<unsigned __int128>(base);
        if (acc > (static_cast<unsigned __int128>(1) << 62)) {
            reject("parameter overflow: " + std::to_string(base) + "^" +
                   std::to_string(exponent) + " exceeds the supported range");
        }
    }
    return static_cast<Int>(acc);
}

std::vector<Int> sorted_set(std::vector<Int> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::string num(Int v) { return std::to_string(v); }

ShiftClassPrediction divisible_class(Int divisor, Int expected) {
    return {"a % " + num(divisor) + " == 0", [divisor](Int a) { return a % divisor == 0; },
            expected};
}

ShiftClassPrediction coprime_class(Int divisor, Int expected) {
    return {"a % " + num(divisor) + " != 0", [divisor](Int a) { return a % divisor != 0; },
            expected};
}

// Shifts exactly divisible by p^i (divisible by p^i but not p^(i+1)).
ShiftClassPrediction exact_power_class(Int p, Int i, Int expected) {
    if (i == 0) return coprime_class(p, expected);
    const Int lo = checked_pow(p, i);
    const Int hi = lo * p;
    return {"a % " + num(lo) + " == 0 && a % " + num(hi) + " != 0",
            [lo, hi](Int a) { return a % lo == 0 && a % hi != 0; }, expected};
}

Int checked_generator(Int p, std::optional<Int> override_g) {
    if (!override_g) return primitive_root(p);
    const ResidueRing field(p);
    const Int g = field.reduce(*override_g);
    if (!field.is_unit(g) || multiplicative_order(g, field) != p - 1) {
        reject("generator override " + num(*override_g) + " does not generate the units of Z_" +
               num(p));
    }
    return g;
}

std::string format_set(const std::vector<Int>& values) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    out << '}';
    return out.str();
}

}  // namespace

std::string family_name(FamilyId id) {
    switch (id) {
        case FamilyId::Z4: return "z4";
        case FamilyId::TwoPower: return "two-power";
        case FamilyId::PSquared: return "p-squared";
        case FamilyId::PPowerMinus: return "p-power-minus";
        case FamilyId::PPowerPlusS: return "p-power-plus-s";
        case FamilyId::MpCrt: return "mp-crt";
        case FamilyId::P1P2Crt: return "p1p2-crt";
    }
    return "unknown";
}

std::optional<FamilyId> family_from_name(const std::string& name) {
    for (FamilyId id : {FamilyId::Z4, FamilyId::TwoPower, FamilyId::PSquared,
                        FamilyId::PPowerMinus, FamilyId::PPowerPlusS, FamilyId::MpCrt,
                        FamilyId::P1P2Crt}) {
        if (family_name(id) == name) return id;
    }
    return std::nullopt;
}

std::vector<FamilyDescriptor> family_z4() {
    FamilyDescriptor identity{FamilyId::Z4, {}, 1, 4, 4, {0}, {}};
    FamilyDescriptor pair{FamilyId::Z4, {}, 3, 4, 3, {0, 2}, {}};
    return {identity, pair};
}

FamilyDescriptor family_two_power(Int k) {
    if (k <= 2) reject("two-power family requires k > 2 (n = 4 is the z4 family)");
    const Int n = checked_pow(2, k);
    const Int e = n / 2 - 1;  // 2^(k-1) - 1
    FamilyDescriptor d{FamilyId::TwoPower, {{"k", k}}, e, n, n / 2 + 1, {0, 2}, {}};
    d.per_class.push_back(divisible_class(2, 2));
    d.per_class.push_back(coprime_class(2, 0));
    return d;
}

FamilyDescriptor family_p_squared(Int p) {
    if (p < 3 || !is_prime(p)) reject("p-squared family requires p to be an odd prime");
    const Int n = p * p;
    FamilyDescriptor d{FamilyId::PSquared, {{"p", p}}, p - 1, n, p, {p, n - p + 1}, {}};
    d.per_class.push_back(divisible_class(p, n - p + 1));
    d.per_class.push_back(coprime_class(p, p));
    return d;
}

FamilyDescriptor family_p_power_minus(Int p, Int k) {
    if (p < 3 || !is_prime(p)) reject("p-power-minus family requires p to be an odd prime");
    if (k <= 2) reject("p-power-minus family requires k > 2 (k = 2 is the p-squared family)");
    const Int n = checked_pow(p, k);
    const Int pk1 = n / p;        // p^(k-1)
    const Int pk2 = pk1 / p;      // p^(k-2)
    const Int e = pk1 - 1;
    const Int m = (2 * pk1 - pk2 + 1) / 2;
    FamilyDescriptor d{FamilyId::PPowerMinus, {{"p", p}, {"k", k}}, e, n, m,
                       sorted_set({1, p, n - pk1 + 1}), {}};
    d.per_class.push_back(divisible_class(pk1, n - pk1 + 1));
    d.per_class.push_back(coprime_class(p, p));
    d.per_class.push_back({"a % " + num(p) + " == 0 && a % " + num(pk1) + " != 0",
                           [p, pk1](Int a) { return a % p == 0 && a % pk1 != 0; }, 1});
    return d;
}

FamilyDescriptor family_p_power_plus_s(Int p, Int k, Int s) {
    if (!is_prime(p)) reject("p-power-plus-s family requires p to be prime");
    if (s < 1) reject("p-power-plus-s family requires s >= 1");
    if (k < 2 * s) reject("p-power-plus-s family requires k >= 2s");
    const Int n = checked_pow(p, k);
    const Int e = checked_pow(p, k - s) + 1;
    const Int m = (s * p + p - s) * checked_pow(p, k - s - 1);

    // Nonzero counts are the partial sums phi(p^k) + phi(p^(k-1)) + ... ,
    // one more term per extra power of p dividing the shift beyond p^(k-s).
    std::vector<Int> partial_sums;
    Int acc = 0;
    for (Int j = 0; j < s; ++j) {
        acc += euler_phi(checked_pow(p, k - j));
        partial_sums.push_back(acc);
    }
    std::vector<Int> predicted{0};
    predicted.insert(predicted.end(), partial_sums.begin(), partial_sums.end());

    FamilyDescriptor d{FamilyId::PPowerPlusS, {{"p", p}, {"k", k}, {"s", s}}, e, n, m,
                       sorted_set(predicted), {}};
    for (Int i = 0; i < k; ++i) {
        const Int expected = i < k - s ? 0 : partial_sums[static_cast<std::size_t>(i - (k - s))];
        d.per_class.push_back(exact_power_class(p, i, expected));
    }
    return d;
}

FamilyDescriptor family_mp_crt(Int m, Int p, Int s, Int t, std::optional<Int> generator_override) {
    if (!is_prime(p)) reject("mp-crt family requires p to be prime");
    if (m < 2) reject("mp-crt family requires m >= 2 (m = 1 is the plain prime-field case)");
    if (std::gcd(m, p) != 1) reject("mp-crt family requires gcd(m, p) = 1");
    if (s < 1 || t < 1) reject("mp-crt family requires s >= 1 and t >= 1");
    if (s * t != p - 1) reject("mp-crt family requires s*t = p - 1");
    const Int g = checked_generator(p, generator_override);
    const ResidueRing field(p);
    const Int e = crt_solve({{1 % m, m}, {field.pow(g, t), p}}).value;
    const Int n = m * p;
    FamilyDescriptor d{FamilyId::MpCrt,
                       {{"m", m}, {"p", p}, {"s", s}, {"t", t}, {"g", g}},
                       e, n, m * (1 + t), sorted_set({0, m * (s - 1)}), {}};
    // Every nontrivial e^i - 1 has gcd exactly m with n (it vanishes mod m
    // and stays a unit mod p), so shifts not divisible by m never collide.
    d.per_class.push_back(divisible_class(m, m * (s - 1)));
    d.per_class.push_back(coprime_class(m, 0));
    return d;
}

FamilyDescriptor family_p1p2_crt(Int p1, Int p2, Int s1, Int t1, Int s2, Int t2,
                                 std::optional<Int> g1_override, std::optional<Int> g2_override) {
    if (!is_prime(p1) || !is_prime(p2) || p1 == p2) {
        reject("p1p2-crt family requires p1 and p2 to be distinct primes");
    }
    if (s1 < 1 || t1 < 1 || s2 < 1 || t2 < 1) {
        reject("p1p2-crt family requires positive s1, t1, s2, t2");
    }
    if (s1 * t1 != p1 - 1) reject("p1p2-crt family requires s1*t1 = p1 - 1");
    if (s2 * t2 != p2 - 1) reject("p1p2-crt family requires s2*t2 = p2 - 1");

    const Int g1 = checked_generator(p1, g1_override);
    const Int g2 = checked_generator(p2, g2_override);
    const Int e = crt_solve({{ResidueRing(p1).pow(g1, t1), p1},
                             {ResidueRing(p2).pow(g2, t2), p2}})
                      .value;
    const Int n = p1 * p2;
    const Int d = std::gcd(s1, s2);
    const Int m = 1 + t1 + t2 + d * t1 * t2;
    const Int a0 = (s1 * s2 - s1 - s2) / d + 1;
    const Int a1 = (p1 - 1) * s2 / d - p1 + s2;
    const Int a2 = (p2 - 1) * s1 / d - p2 + s1;

    FamilyDescriptor desc{FamilyId::P1P2Crt,
                          {{"p1", p1}, {"s1", s1}, {"t1", t1}, {"p2", p2}, {"s2", s2},
                           {"t2", t2}, {"d", d}, {"g1", g1}, {"g2", g2}},
                          e, n, m, sorted_set({a0, a1, a2}), {}};
    desc.per_class.push_back({"gcd(a, " + num(n) + ") == 1",
                              [n](Int a) { return std::gcd(a, n) == 1; }, a0});
    desc.per_class.push_back(divisible_class(p1, a1));
    desc.per_class.push_back(divisible_class(p2, a2));
    return desc;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::UnverifiableAtScale: return "UNVERIFIABLE";
    }
    return "FAIL";
}

VerificationReport verify_family(const FamilyDescriptor& descriptor, Int brute_bound) {
    VerificationReport report;
    report.descriptor = descriptor;

    if (descriptor.family == FamilyId::PPowerPlusS) {
        // The additive image-size cross-check (per-class coset counts plus a
        // separate 1 for the zero coset) double-counts {0}: its final sum
        // term phi(p^0) already is the zero coset. Record the concrete gap
        // next to the closed form actually used.
        Int p = 0, k = 0, s = 0;
        for (const auto& [key, value] : descriptor.parameters) {
            if (key == "p") p = value;
            if (key == "k") k = value;
            if (key == "s") s = value;
        }
        if (p >= 2 && s >= 1 && k >= 2 * s) {
            Int term_sum = 1;
            for (Int i = 0; i < s; ++i) {
                term_sum += euler_phi(checked_pow(p, k - i)) / checked_pow(p, s - i);
            }
            for (Int i = s; i <= k; ++i) term_sum += euler_phi(checked_pow(p, k - i));
            report.notes.push_back(
                "image-size cross-check: additive per-class count sum evaluates to " +
                num(term_sum) + ", one more than the closed form m = " +
                num(descriptor.predicted_m) +
                " (it counts the zero coset twice); the closed form is the prediction");
        }
    }

    if (descriptor.predicted_n > brute_bound) {
        report.verdict = Verdict::UnverifiableAtScale;
        report.mismatch_detail = "predicted n = " + num(descriptor.predicted_n) +
                                 " exceeds the brute-force bound " + num(brute_bound);
        return report;
    }

    const ResidueRing ring(descriptor.predicted_n);
    const UnitSubgroup subgroup = build_subgroup(descriptor.generator, ring);
    const CosetIndexFunction f = build_coset_index_function(build_partition(subgroup));
    const ZdfSpectrum direct = spectrum_direct(f);
    const ZdfSpectrum unions = spectrum_via_unions(subgroup);

    report.paths_agree = direct.shift_counts == unions.shift_counts &&
                         direct.image_size == unions.image_size;
    report.measured_m = direct.image_size;
    report.measured_spectrum = direct.value_set;

    std::vector<std::string> problems;
    if (!report.paths_agree) {
        problems.push_back("direct and union-of-solutions spectra disagree");
    }
    if (report.measured_m != descriptor.predicted_m) {
        problems.push_back("m: predicted " + num(descriptor.predicted_m) + ", measured " +
                           num(report.measured_m));
    }
    if (report.measured_spectrum != descriptor.predicted_spectrum) {
        problems.push_back("S: predicted " + format_set(descriptor.predicted_spectrum) +
                           ", measured " + format_set(report.measured_spectrum));
    }

    report.per_class_match = true;
    if (!descriptor.per_class.empty()) {
        Int reported = 0;
        for (Int a = 1; a < descriptor.predicted_n; ++a) {
            const ShiftClassPrediction* found = nullptr;
            bool ambiguous = false;
            for (const auto& cls : descriptor.per_class) {
                if (!cls.matches(a)) continue;
                if (found) ambiguous = true;
                found = &cls;
            }
            std::string problem;
            if (!found) {
                problem = "shift " + num(a) + " matches no predicted class";
            } else if (ambiguous) {
                problem = "shift " + num(a) + " matches more than one predicted class";
            } else if (direct.count_for(a) != found->expected) {
                problem = "class '" + found->label + "': shift " + num(a) + " predicted " +
                          num(found->expected) + ", measured " + num(direct.count_for(a));
            }
            if (!problem.empty()) {
                report.per_class_match = false;
                if (reported < 3) problems.push_back(problem);
                ++reported;
            }
        }
        if (reported > 3) {
            problems.push_back("(" + num(reported - 3) + " further per-class mismatches)");
        }
    }

    if (problems.empty()) {
        report.verdict = Verdict::Pass;
    } else {
        report.verdict = Verdict::Fail;
        std::string joined;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i) joined += "; ";
            joined += problems[i];
        }
        report.mismatch_detail = joined;
    }
    return report;
}

}  // namespace zdf
