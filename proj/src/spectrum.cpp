#include "zdf/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zdf {

namespace {

void finalize(ZdfSpectrum& spectrum) {
    spectrum.value_set = spectrum.shift_counts;
    std::sort(spectrum.value_set.begin(), spectrum.value_set.end());
    spectrum.value_set.erase(std::unique(spectrum.value_set.begin(), spectrum.value_set.end()),
                             spectrum.value_set.end());
    spectrum.classification =
        spectrum.value_set.size() == 1 ? ZdfClass::Zdbf : ZdfClass::Nontrivial;
}

}  // namespace

std::string to_string(ZdfClass c) {
    return c == ZdfClass::Zdbf ? "ZDBF" : "nontrivial-ZDF";
}

Int ZdfSpectrum::count_for(Int shift) const {
    if (shift < 1 || shift >= ring.modulus()) {
        throw std::invalid_argument("shift must be a nonzero ring element");
    }
    return shift_counts[static_cast<std::size_t>(shift - 1)];
}

std::vector<Int> collision_set(const CosetIndexFunction& f, Int shift) {
    const Int n = f.ring.modulus();
    if (shift < 1 || shift >= n) {
        throw std::invalid_argument("shift must be a nonzero ring element");
    }
    std::vector<Int> result;
    for (Int x = 0; x < n; ++x) {
        Int y = x + shift;
        if (y >= n) y -= n;
        if (f.table[static_cast<std::size_t>(y)] == f.table[static_cast<std::size_t>(x)]) {
            result.push_back(x);
        }
    }
    return result;
}

namespace detail {

ZdfSpectrum spectrum_from_table(const ResidueRing& ring, const std::vector<Int>& table,
                                Int image_size) {
    const Int n = ring.modulus();
    if (static_cast<Int>(table.size()) != n) {
        throw std::invalid_argument("index table length must equal the ring modulus");
    }
    ZdfSpectrum spectrum{ring, {}, {}, image_size, ZdfClass::Zdbf};
    spectrum.shift_counts.reserve(static_cast<std::size_t>(n - 1));
    for (Int a = 1; a < n; ++a) {
        Int count = 0;
        for (Int x = 0; x < n; ++x) {
            Int y = x + a;
            if (y >= n) y -= n;
            if (table[static_cast<std::size_t>(y)] == table[static_cast<std::size_t>(x)]) ++count;
        }
        spectrum.shift_counts.push_back(count);
    }
    finalize(spectrum);
    return spectrum;
}

}  // namespace detail

ZdfSpectrum spectrum_direct(const CosetIndexFunction& f) {
    return detail::spectrum_from_table(f.ring, f.table, f.image_size);
}

SolutionUnion solution_union(const UnitSubgroup& subgroup, Int shift) {
    const ResidueRing& ring = subgroup.ring;
    const Int n = ring.modulus();
    if (shift < 1 || shift >= n) {
        throw std::invalid_argument("shift must be a nonzero ring element");
    }
    SolutionUnion result{shift, {}};
    for (Int g : subgroup.elements) {
        if (g == 1) continue;  // 0*x = a has no solution for nonzero a
        const CongruenceSolution sol = solve_linear_congruence(g - 1, shift, ring);
        result.elements.insert(result.elements.end(), sol.solutions.begin(), sol.solutions.end());
    }
    std::sort(result.elements.begin(), result.elements.end());
    result.elements.erase(std::unique(result.elements.begin(), result.elements.end()),
                          result.elements.end());
    return result;
}

ZdfSpectrum spectrum_via_unions(const UnitSubgroup& subgroup) {
    const Int n = subgroup.ring.modulus();
    const CosetPartition partition = build_partition(subgroup);
    ZdfSpectrum spectrum{subgroup.ring, {}, {}, static_cast<Int>(partition.cosets.size()),
                         ZdfClass::Zdbf};
    spectrum.shift_counts.reserve(static_cast<std::size_t>(n - 1));

    // The congruence (g-1)x = a has solutions x0 + i*(n/d) with d = gcd(g-1, n)
    // whenever d | a; factor out the per-g structure so the per-shift loop is
    // pure arithmetic plus stamp-based deduplication of the union.
    struct Coefficient {
        Int d;
        Int step;     // n / d
        Int inverse;  // of (g-1)/d modulo step
    };
    std::vector<Coefficient> coefficients;
    coefficients.reserve(subgroup.elements.size());
    for (Int g : subgroup.elements) {
        if (g == 1) continue;
        const Int d = std::gcd(g - 1, n);
        const Int step = n / d;
        coefficients.push_back({d, step, step == 1 ? 0 : mod_inverse((g - 1) / d, step)});
    }

    std::vector<Int> stamp(static_cast<std::size_t>(n), 0);  // last shift that marked x
    for (Int a = 1; a < n; ++a) {
        Int count = 0;
        for (const Coefficient& c : coefficients) {
            if (a % c.d != 0) continue;
            const Int x0 = c.step == 1 ? 0 : mul_mod(c.inverse, (a / c.d) % c.step, c.step);
            for (Int x = x0; x < n; x += c.step) {
                if (stamp[static_cast<std::size_t>(x)] != a) {
                    stamp[static_cast<std::size_t>(x)] = a;
                    ++count;
                }
            }
        }
        spectrum.shift_counts.push_back(count);
    }
    finalize(spectrum);
    return spectrum;
}

ZdbfConditionResult check_zdbf_condition(const UnitSubgroup& subgroup) {
    const ResidueRing& ring = subgroup.ring;
    const Int n = ring.modulus();
    for (Int g : subgroup.elements) {
        if (g == 1) continue;
        if (!ring.is_unit(g - 1)) return {false, n, 0, 0};
    }
    const Int k = subgroup.order;
    if ((n - 1) % k != 0) {
        // Unit differences force every nonzero coset to have size exactly k,
        // so k divides n - 1 whenever the condition holds.
        throw std::logic_error("zdbf condition holds but |G| does not divide n - 1");
    }
    return {true, n, (n - 1) / k + 1, k - 1};
}

}  // namespace zdf
