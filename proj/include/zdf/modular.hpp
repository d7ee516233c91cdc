#pragma once

// Exact modular arithmetic over Z_n: gcd/extended gcd, linear congruence
// solving, Euler's totient, multiplicative orders, primitive roots, CRT,
// and trial-division primality/factorization. Everything is deterministic
// and works on plain 64-bit integers; intermediate products are widened so
// moduli up to at least 2^31 are exact.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zdf {

using Int = std::int64_t;

// Thrown when a ring element that must be a unit (coprime to the modulus)
// is not one.
class NotAUnitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The ambient ring Z_n. Canonical element representatives live in [0, n).
class ResidueRing {
public:
    explicit ResidueRing(Int modulus);

    Int modulus() const { return n_; }

    // Maps any 64-bit value (negative included) to its representative in [0, n).
    Int reduce(Int x) const;

    Int add(Int a, Int b) const;
    Int sub(Int a, Int b) const;
    Int mul(Int a, Int b) const;
    Int pow(Int base, Int exponent) const;

    bool is_unit(Int a) const;

    bool operator==(const ResidueRing& other) const { return n_ == other.n_; }

private:
    Int n_;
};

// All x in [0, n) with a*x = b in Z_n. Either empty (gcd(a,n) does not
// divide b) or exactly gcd_divisor solutions spaced n/gcd_divisor apart,
// ascending.
struct CongruenceSolution {
    std::vector<Int> solutions;
    Int gcd_divisor = 0;
};

// gcd of two nonnegative integers; rejects (0, 0).
Int gcd(Int a, Int b);

// a*b mod n for 0 <= a, b < n and n >= 1, widened so large moduli stay exact.
Int mul_mod(Int a, Int b, Int n);

// g = gcd(a, b) together with x, y such that a*x + b*y = g.
struct BezoutTriple {
    Int g;
    Int x;
    Int y;
};
BezoutTriple extended_gcd(Int a, Int b);

// Inverse of a modulo n (n >= 1); throws NotAUnitError when gcd(a, n) != 1.
// The degenerate modulus n = 1 has inverse 0.
Int mod_inverse(Int a, Int n);

CongruenceSolution solve_linear_congruence(Int a, Int b, const ResidueRing& ring);

// Number of units of Z_n; euler_phi(1) == 1.
Int euler_phi(Int n);

// Smallest t >= 1 with e^t = 1 in the ring; e must be a unit.
Int multiplicative_order(Int e, const ResidueRing& ring);

// Smallest generator of the unit group of Z_p, p prime. Returns 1 for p = 2.
Int primitive_root(Int p);

struct CrtResidue {
    Int remainder;
    Int modulus;
};

// Element of Z_(product of moduli) produced by crt_solve.
struct CrtSolution {
    Int value;
    Int modulus;
};

// Unique x modulo the product of the (pairwise coprime) moduli with
// x = remainder (mod modulus) for every pair.
CrtSolution crt_solve(const std::vector<CrtResidue>& residues);

bool is_prime(Int n);

// Prime factorization as ascending (prime, exponent) pairs; factorize(1) is empty.
std::vector<std::pair<Int, Int>> factorize(Int n);

// Ascending list of all positive divisors of n >= 1.
std::vector<Int> divisors(Int n);

}  // namespace zdf
