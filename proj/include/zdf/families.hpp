#pragma once

// Parameterized constructors for the known families of coset index
// functions on Z_n together with their closed-form (n, m, S) predictions
// and, where available, the predicted per-shift count on each divisibility
// class of the shift. verify_family replays a descriptor through the
// subgroup/partition/spectrum pipeline and compares measured against
// predicted values.
//
//   z4               n = 4, the two unit subgroups of Z_4
//   two-power        n = 2^k (k > 2),       e = 2^(k-1) - 1
//   p-squared        n = p^2 (p odd prime), e = p - 1
//   p-power-minus    n = p^k (k > 2),       e = p^(k-1) - 1
//   p-power-plus-s   n = p^k (k >= 2s),     e = p^(k-s) + 1
//   mp-crt           n = m*p,               e = 1 (mod m), g^t (mod p)
//   p1p2-crt         n = p1*p2,             e = g1^t1 (mod p1), g2^t2 (mod p2)

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zdf/spectrum.hpp"

namespace zdf {

enum class FamilyId {
    Z4,
    TwoPower,
    PSquared,
    PPowerMinus,
    PPowerPlusS,
    MpCrt,
    P1P2Crt,
};

// Stable CLI/serialization token, e.g. "p-squared".
std::string family_name(FamilyId id);
std::optional<FamilyId> family_from_name(const std::string& name);

// Predicted collision count for every shift in one divisibility class.
struct ShiftClassPrediction {
    std::string label;                  // e.g. "a % 3 == 0"
    std::function<bool(Int)> matches;   // does the class contain this shift
    Int expected;
};

struct FamilyDescriptor {
    FamilyId family;
    std::vector<std::pair<std::string, Int>> parameters;  // named, in declaration order
    Int generator;
    Int predicted_n;
    Int predicted_m;
    std::vector<Int> predicted_spectrum;  // S: ascending, deduplicated
    // Empty when no per-class prediction is stated for the family; otherwise
    // the classes partition the nonzero shifts.
    std::vector<ShiftClassPrediction> per_class;
};

// Both rows for n = 4: the identity subgroup {1} and {1, 3}.
std::vector<FamilyDescriptor> family_z4();

// n = 2^k, e = 2^(k-1) - 1, predicted (2^k, 2^(k-1) + 1, {0, 2}); requires k > 2.
FamilyDescriptor family_two_power(Int k);

// n = p^2, e = p - 1, predicted (p^2, p, {p, p^2 - p + 1}); requires p an odd prime.
FamilyDescriptor family_p_squared(Int p);

// n = p^k, e = p^(k-1) - 1, predicted (p^k, (2p^(k-1) - p^(k-2) + 1)/2,
// {1, p, p^k - p^(k-1) + 1}); requires p an odd prime and k > 2.
FamilyDescriptor family_p_power_minus(Int p, Int k);

// n = p^k, e = p^(k-s) + 1, predicted m = (sp + p - s) * p^(k-s-1) and
// S = {0} united with the partial sums phi(p^k) + ... + phi(p^(k-i)) for
// i < s; requires p prime, s >= 1, k >= 2s.
FamilyDescriptor family_p_power_plus_s(Int p, Int k, Int s);

// n = m*p with gcd(m, p) = 1, m >= 2, s*t = p - 1. The generator solves
// e = 1 (mod m), e = g^t (mod p) for a generator g of the units of Z_p.
// Predicted (mp, m(1+t), {0, m(s-1)}).
FamilyDescriptor family_mp_crt(Int m, Int p, Int s, Int t,
                               std::optional<Int> generator_override = std::nullopt);

// n = p1*p2 with s_i * t_i = p_i - 1 and d = gcd(s1, s2). Predicted
// m = 1 + t1 + t2 + d*t1*t2 and S = {a0, a1, a2} per the closed forms.
FamilyDescriptor family_p1p2_crt(Int p1, Int p2, Int s1, Int t1, Int s2, Int t2,
                                 std::optional<Int> g1_override = std::nullopt,
                                 std::optional<Int> g2_override = std::nullopt);

enum class Verdict {
    Pass,
    Fail,
    UnverifiableAtScale,  // predicted_n exceeds the brute-force bound
};

std::string to_string(Verdict v);

struct VerificationReport {
    FamilyDescriptor descriptor;
    Int measured_m = 0;
    std::vector<Int> measured_spectrum;
    bool paths_agree = false;     // direct and unions routes produced identical counts
    bool per_class_match = false;
    Verdict verdict = Verdict::Fail;
    std::string mismatch_detail;  // empty on PASS
    std::vector<std::string> notes;
};

VerificationReport verify_family(const FamilyDescriptor& descriptor, Int brute_bound = 4096);

}  // namespace zdf
