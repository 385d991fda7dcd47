#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "polyreg/checked.hpp"
#include "polyreg/rational.hpp"

/// Exact integer primitives: sieving, factorization, multiplicative
/// functions, quadratic symbols and the Chinese remainder theorem.
namespace polyreg::numthy {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors; // ascending primes

    std::vector<std::uint64_t> primes() const;
};

struct MultiplicativeProfile {
    std::uint64_t n;
    std::uint64_t phi;
    unsigned omega;
    int mobius;
    Rational rho; // 2^omega(n) * n / phi(n)
};

struct CrtSolution {
    i128 solution;
    i128 modulus;
};

/// Default memory ceiling for a single sieve request, in bytes.
inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t(1) << 30;

/// All primes in [2, limit], ascending. Throws ResourceError when the
/// sieve would need more than `budget_bytes`.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::uint64_t budget_bytes = kDefaultSieveBudget);

/// Shared, lazily grown table of primes below at least `limit` (stored as
/// 32-bit values). The returned snapshot is immutable; safe across threads.
std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint64_t limit);

/// Deterministic Miller-Rabin. The witness set {2,3,5,...,37} is exact for
/// every n < 3.3e24, which covers all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

Factorization factorize(std::uint64_t n);

/// Distinct prime divisors of n (the set P(n)), ascending. P(1) is empty.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

MultiplicativeProfile profile(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
unsigned omega(std::uint64_t n);
Rational rho(std::uint64_t n);

/// Kronecker symbol (D/n) over the full integer domain.
int kronecker(i128 D, i128 n);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(i128 a, std::uint64_t p);

/// Solve x = residues[j] (mod moduli[j]). Non-coprime moduli are accepted
/// when the congruences are consistent; the result is then modulo the lcm.
CrtSolution crt(std::span<const i128> residues, std::span<const i128> moduli);

/// Inverse of a modulo m (m >= 1); DomainError when gcd(a, m) != 1.
i128 mod_inverse(i128 a, i128 m);

/// p-adic valuation of a nonzero integer.
unsigned ord_p(i128 n, i128 p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Product of the given primes (1 for an empty list), checked.
i128 product(std::span<const std::uint64_t> primes);

} // namespace polyreg::numthy
