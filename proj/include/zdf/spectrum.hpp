#pragma once

// Zero-difference spectrum of a coset index function. Two independent
// routes compute the per-shift collision counts:
//
//   direct:  N(a) = |{x : f(x+a) = f(x)}| by scanning the table, and
//   unions:  N(a) = |union over g in G of {x : x*(g-1) = a}|,
//
// which agree set-wise, not just in cardinality. The direct route is the
// trusted oracle; the unions route is the cheap one (O(n*|G|) overall).

#include <string>
#include <vector>

#include "zdf/coset.hpp"

namespace zdf {

enum class ZdfClass {
    Zdbf,        // |S| = 1: every nonzero shift collides equally often
    Nontrivial,  // |S| > 1
};

std::string to_string(ZdfClass c);

struct ZdfSpectrum {
    ResidueRing ring;
    std::vector<Int> shift_counts;  // shift_counts[a-1] = N(a) for a in [1, n)
    std::vector<Int> value_set;     // S: ascending distinct counts
    Int image_size;                 // m
    ZdfClass classification;

    Int count_for(Int shift) const;
};

// Sorted {x : f(x+a) = f(x)} for a nonzero shift a.
std::vector<Int> collision_set(const CosetIndexFunction& f, Int shift);

ZdfSpectrum spectrum_direct(const CosetIndexFunction& f);

// Union of the solution sets of x*(g-1) = a over all g in G, deduplicated.
struct SolutionUnion {
    Int shift;
    std::vector<Int> elements;  // ascending

    Int count() const { return static_cast<Int>(elements.size()); }
};

SolutionUnion solution_union(const UnitSubgroup& subgroup, Int shift);

ZdfSpectrum spectrum_via_unions(const UnitSubgroup& subgroup);

// Check that g - 1 is a unit for every g in G other than 1. When the check
// holds the function is a balanced (single-count) instance with parameters
// (n, (n-1)/k + 1, k-1) for k = |G|; those are filled in below.
struct ZdbfConditionResult {
    bool holds = false;
    Int n = 0;
    Int m = 0;       // valid only when holds
    Int lambda = 0;  // valid only when holds
};

ZdbfConditionResult check_zdbf_condition(const UnitSubgroup& subgroup);

namespace detail {

// Direct-route core on a raw index table; test code uses this to feed
// tables that do not come from a coset construction.
ZdfSpectrum spectrum_from_table(const ResidueRing& ring, const std::vector<Int>& table,
                                Int image_size);

}  // namespace detail

}  // namespace zdf
