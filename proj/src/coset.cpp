#include "zdf/coset.hpp"

#include <algorithm>
#include <string>

namespace zdf {

UnitSubgroup build_subgroup(Int e, const ResidueRing& ring) {
    const Int n = ring.modulus();
    e = ring.reduce(e);
    if (!ring.is_unit(e)) {
        throw NotAUnitError("generator " + std::to_string(e) + " is not a unit modulo " +
                            std::to_string(n) + "; <e> is not a subgroup of the units");
    }
    std::vector<Int> elements{1};
    for (Int x = e; x != 1; x = ring.mul(x, e)) elements.push_back(x);
    const Int order = static_cast<Int>(elements.size());
    std::sort(elements.begin(), elements.end());
    return {ring, e, std::move(elements), order};
}

CosetPartition build_partition(const UnitSubgroup& subgroup) {
    const ResidueRing& ring = subgroup.ring;
    const Int n = ring.modulus();

    CosetPartition partition{ring, subgroup, {}, {}, {}};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    // Scanning r in ascending order makes r the minimal element of every
    // coset it opens, so the coset list comes out ordered by minimal
    // representative with no extra sort.
    for (Int r = 0; r < n; ++r) {
        if (seen[static_cast<std::size_t>(r)]) continue;
        std::vector<Int> coset;
        coset.reserve(subgroup.elements.size());
        for (Int g : subgroup.elements) {
            const Int x = ring.mul(r, g);
            if (!seen[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                coset.push_back(x);
            }
        }
        std::sort(coset.begin(), coset.end());
        partition.cosets.push_back(std::move(coset));
    }

    for (const auto& coset : partition.cosets) {
        const Int size = static_cast<Int>(coset.size());
        partition.size_multiplicity[size] += size;
    }
    for (const auto& [size, members] : partition.size_multiplicity) {
        partition.coset_sizes.push_back(size);
    }
    return partition;
}

CosetIndexFunction build_coset_index_function(const CosetPartition& partition) {
    const Int n = partition.ring.modulus();
    CosetIndexFunction f{partition.ring, partition,
                         std::vector<Int>(static_cast<std::size_t>(n), 0),
                         static_cast<Int>(partition.cosets.size())};
    for (std::size_t index = 0; index < partition.cosets.size(); ++index) {
        for (Int x : partition.cosets[index]) {
            f.table[static_cast<std::size_t>(x)] = static_cast<Int>(index);
        }
    }
    return f;
}

}  // namespace zdf
