#pragma once

// Independent brute-force oracles used only by tests. Each one recomputes a
// quantity by exhaustive enumeration, with no calls into the code paths it
// is checking.

#include <algorithm>
#include <numeric>
#include <vector>

#include "zdf/modular.hpp"

namespace oracle {

using zdf::Int;

// All x in [0, n) with a*x = b (mod n), by trying every x.
inline std::vector<Int> congruence_solutions(Int a, Int b, Int n) {
    std::vector<Int> out;
    for (Int x = 0; x < n; ++x) {
        if ((a * x) % n == b) out.push_back(x);
    }
    return out;
}

inline Int phi(Int n) {
    if (n == 1) return 1;
    Int count = 0;
    for (Int x = 1; x < n; ++x) {
        if (std::gcd(x, n) == 1) ++count;
    }
    return count;
}

// Order of a unit by repeated multiplication.
inline Int order(Int e, Int n) {
    Int t = 1;
    for (Int x = e % n; x != 1; x = (x * e) % n) ++t;
    return t;
}

// Index table of the coset function built a different way: map every x to
// the smallest element of {x*g : g in subgroup}, then rank the distinct
// representatives. Ranking minima ascending reproduces the canonical
// minimal-representative order.
inline std::vector<Int> index_table(Int n, const std::vector<Int>& subgroup_elements) {
    std::vector<Int> representative(static_cast<std::size_t>(n));
    for (Int x = 0; x < n; ++x) {
        Int smallest = n;
        for (Int g : subgroup_elements) smallest = std::min(smallest, (x * g) % n);
        representative[static_cast<std::size_t>(x)] = smallest;
    }
    std::vector<Int> distinct = representative;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<Int> table(static_cast<std::size_t>(n));
    for (Int x = 0; x < n; ++x) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(),
                                         representative[static_cast<std::size_t>(x)]);
        table[static_cast<std::size_t>(x)] = it - distinct.begin();
    }
    return table;
}

// Collision count of a raw index table at one shift.
inline Int collision_count(const std::vector<Int>& table, Int shift) {
    const Int n = static_cast<Int>(table.size());
    Int count = 0;
    for (Int x = 0; x < n; ++x) {
        if (table[static_cast<std::size_t>((x + shift) % n)] ==
            table[static_cast<std::size_t>(x)]) {
            ++count;
        }
    }
    return count;
}

}  // namespace oracle
