#pragma once

// Cyclic unit subgroups G = <e> of Z_n, the partition of Z_n into cosets
// rG, and the coset index function that sends every element to the index
// of its coset. Coset indices are canonical: cosets are ordered by their
// minimal representative, so rebuilding the same (n, e) always yields the
// same table.

#include <map>
#include <vector>

#include "zdf/modular.hpp"

namespace zdf {

struct UnitSubgroup {
    ResidueRing ring;
    Int generator;
    std::vector<Int> elements;  // ascending; the powers of the generator
    Int order;
};

// Builds <e> inside the units of Z_n; throws NotAUnitError when gcd(e, n) != 1.
UnitSubgroup build_subgroup(Int e, const ResidueRing& ring);

struct CosetPartition {
    ResidueRing ring;
    UnitSubgroup subgroup;
    // Pairwise disjoint, union [0, n); each coset ascending; cosets ordered
    // by minimal representative.
    std::vector<std::vector<Int>> cosets;
    std::vector<Int> coset_sizes;          // ascending set of occurring sizes
    std::map<Int, Int> size_multiplicity;  // size -> number of elements in cosets of that size
};

CosetPartition build_partition(const UnitSubgroup& subgroup);

struct CosetIndexFunction {
    ResidueRing ring;
    CosetPartition partition;
    std::vector<Int> table;  // length n, table[x] = index of the coset holding x
    Int image_size;

    Int operator()(Int x) const { return table[static_cast<std::size_t>(x)]; }
};

CosetIndexFunction build_coset_index_function(const CosetPartition& partition);

}  // namespace zdf
