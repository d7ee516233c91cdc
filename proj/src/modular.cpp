#include "zdf/modular.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace zdf {

namespace {

// Largest modulus whose element products still fit in a signed 64-bit
// intermediate without the 128-bit widening.
constexpr Int kSmallModulusMax = Int{1} << 31;

[[noreturn]] void reject(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

Int mul_mod(Int a, Int b, Int n) {
    if (n <= kSmallModulusMax) return (a * b) % n;
    return static_cast<Int>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                            static_cast<unsigned __int128>(n));
}

ResidueRing::ResidueRing(Int modulus) : n_(modulus) {
    if (modulus < 2) reject("ring modulus must be at least 2, got " + std::to_string(modulus));
}

Int ResidueRing::reduce(Int x) const {
    Int r = x % n_;
    return r < 0 ? r + n_ : r;
}

Int ResidueRing::add(Int a, Int b) const { return reduce(reduce(a) + reduce(b)); }

Int ResidueRing::sub(Int a, Int b) const { return reduce(reduce(a) - reduce(b)); }

Int ResidueRing::mul(Int a, Int b) const { return mul_mod(reduce(a), reduce(b), n_); }

Int ResidueRing::pow(Int base, Int exponent) const {
    if (exponent < 0) reject("negative exponent");
    Int result = reduce(1);
    Int acc = reduce(base);
    while (exponent > 0) {
        if (exponent & 1) result = mul(result, acc);
        acc = mul(acc, acc);
        exponent >>= 1;
    }
    return result;
}

bool ResidueRing::is_unit(Int a) const { return std::gcd(reduce(a), n_) == 1; }

Int gcd(Int a, Int b) {
    if (a < 0 || b < 0) reject("gcd expects nonnegative arguments");
    if (a == 0 && b == 0) reject("gcd(0, 0) is undefined");
    return std::gcd(a, b);
}

BezoutTriple extended_gcd(Int a, Int b) {
    if (a < 0 || b < 0) reject("extended_gcd expects nonnegative arguments");
    if (a == 0 && b == 0) reject("extended_gcd(0, 0) is undefined");
    // Invariant: r0 = a*x0 + b*y0 and r1 = a*x1 + b*y1.
    Int r0 = a, r1 = b;
    Int x0 = 1, x1 = 0;
    Int y0 = 0, y1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        x0 -= q * x1;
        y0 -= q * y1;
        std::swap(r0, r1);
        std::swap(x0, x1);
        std::swap(y0, y1);
    }
    return {r0, x0, y0};
}

Int mod_inverse(Int a, Int n) {
    if (n < 1) reject("mod_inverse needs a positive modulus");
    if (n == 1) return 0;
    Int r = a % n;
    if (r < 0) r += n;
    BezoutTriple t = extended_gcd(r, n);
    if (t.g != 1) {
        throw NotAUnitError("no inverse: gcd(" + std::to_string(r) + ", " + std::to_string(n) +
                            ") = " + std::to_string(t.g));
    }
    Int inv = t.x % n;
    return inv < 0 ? inv + n : inv;
}

CongruenceSolution solve_linear_congruence(Int a, Int b, const ResidueRing& ring) {
    const Int n = ring.modulus();
    if (a < 0 || a >= n || b < 0 || b >= n) {
        reject("congruence coefficients must lie in [0, n)");
    }
    const Int d = std::gcd(a, n);  // a = 0 gives d = n
    CongruenceSolution result;
    result.gcd_divisor = d;
    if (b % d != 0) return result;

    const Int step = n / d;
    // Base solution of (a/d) x = b/d mod n/d, where a/d is a unit mod n/d.
    const Int x0 = step == 1 ? 0 : mul_mod(mod_inverse(a / d, step), (b / d) % step, step);
    result.solutions.reserve(static_cast<std::size_t>(d));
    for (Int i = 0; i < d; ++i) result.solutions.push_back(x0 + i * step);
    return result;
}

Int euler_phi(Int n) {
    if (n < 1) reject("euler_phi expects n >= 1, got " + std::to_string(n));
    Int phi = n;
    for (const auto& [p, exp] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

Int multiplicative_order(Int e, const ResidueRing& ring) {
    const Int n = ring.modulus();
    e = ring.reduce(e);
    if (!ring.is_unit(e)) {
        throw NotAUnitError("multiplicative order undefined: gcd(" + std::to_string(e) + ", " +
                            std::to_string(n) + ") != 1");
    }
    // The order divides phi(n); strip prime factors while e^(t/q) stays 1.
    Int t = euler_phi(n);
    for (const auto& [q, exp] : factorize(t)) {
        while (t % q == 0 && ring.pow(e, t / q) == 1) t /= q;
    }
    return t;
}

Int primitive_root(Int p) {
    if (!is_prime(p)) reject("primitive_root expects a prime, got " + std::to_string(p));
    if (p == 2) return 1;  // the unit group of Z_2 is {1}
    const ResidueRing ring(p);
    const auto factors = factorize(p - 1);
    for (Int g = 2; g < p; ++g) {
        bool generates = true;
        for (const auto& [q, exp] : factors) {
            if (ring.pow(g, (p - 1) / q) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw std::logic_error("no primitive root found for prime " + std::to_string(p));
}

CrtSolution crt_solve(const std::vector<CrtResidue>& residues) {
    if (residues.empty()) reject("crt_solve needs at least one congruence");
    Int value = 0;
    Int modulus = 1;
    for (const auto& [r, m] : residues) {
        if (m < 1) reject("crt modulus must be positive");
        if (r < 0 || r >= m) reject("crt remainder must be reduced modulo its modulus");
        if (std::gcd(modulus, m) != 1) {
            reject("crt moduli are not pairwise coprime: gcd(" + std::to_string(modulus) + ", " +
                   std::to_string(m) + ") > 1");
        }
        if (static_cast<unsigned __int128>(modulus) * static_cast<unsigned __int128>(m) >
            static_cast<unsigned __int128>(std::numeric_limits<Int>::max())) {
            reject("crt modulus product overflows 64 bits");
        }
        // Lift value from Z_modulus to Z_(modulus*m): value + modulus*t = r (mod m).
        const Int t =
            m == 1 ? 0 : mul_mod(mod_inverse(modulus % m, m), ((r - value) % m + m) % m, m);
        value += modulus * t;
        modulus *= m;
    }
    return {value, modulus};
}

bool is_prime(Int n) {
    if (n < 1) reject("is_prime expects n >= 1, got " + std::to_string(n));
    if (n < 4) return n > 1;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::vector<std::pair<Int, Int>> factorize(Int n) {
    if (n < 1) reject("factorize expects n >= 1, got " + std::to_string(n));
    std::vector<std::pair<Int, Int>> factors;
    auto strip = [&](Int p) {
        if (n % p != 0) return;
        Int exp = 0;
        while (n % p == 0) {
            n /= p;
            ++exp;
        }
        factors.emplace_back(p, exp);
    };
    strip(2);
    strip(3);
    for (Int d = 5; d * d <= n; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

std::vector<Int> divisors(Int n) {
    if (n < 1) reject("divisors expects n >= 1, got " + std::to_string(n));
    std::vector<Int> result{1};
    for (const auto& [p, exp] : factorize(n)) {
        const std::size_t base_count = result.size();
        Int power = 1;
        for (Int i = 1; i <= exp; ++i) {
            power *= p;
            for (std::size_t j = 0; j < base_count; ++j) result.push_back(result[j] * power);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace zdf
