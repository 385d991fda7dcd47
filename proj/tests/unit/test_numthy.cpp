#include <random>

#include "doctest.h"

#include "polyreg/errors.hpp"
#include "polyreg/numthy.hpp"
#include "polyreg/rational.hpp"

using namespace polyreg;
using namespace polyreg::numthy;

namespace {

bool trial_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Euler's criterion
int euler_legendre(i128 a, std::uint64_t p)
{
    const auto r = powmod(static_cast<std::uint64_t>(mod(a, p)), (p - 1) / 2, p);
    return r == 0 ? 0 : r == 1 ? 1 : -1;
}

} // namespace

TEST_CASE("sieve_primes")
{
    CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
    CHECK(sieve_primes(100).size() == 25);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t n = 2; n <= 5000; ++n)
        if (trial_prime(n)) oracle.push_back(n);
    CHECK(sieve_primes(5000) == oracle);
    CHECK_THROWS_AS(sieve_primes(1'000'000, 16), ResourceError);
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
}

TEST_CASE("is_prime agrees with trial division")
{
    for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
    CHECK(is_prime(18446744073709551557ull));
    CHECK_FALSE(is_prime(3215031751ull)); // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(next_prime(7) == 11);
    CHECK(next_prime(1) == 2);
}

TEST_CASE("factorize")
{
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(20664).factors == std::vector<PrimePower>{{2, 3}, {3, 2}, {7, 1}, {41, 1}});
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const std::uint64_t n = rng() % 1'000'000'000'000ull + 1;
        std::uint64_t back = 1;
        for (auto [p, e] : factorize(n).factors) {
            CHECK(trial_prime(p));
            for (unsigned j = 0; j < e; ++j) back *= p;
        }
        CHECK(back == n);
    }
    CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("multiplicative functions")
{
    const auto pr = profile(12);
    CHECK(pr.phi == 4);
    CHECK(pr.omega == 2);
    CHECK(pr.mobius == 0);
    CHECK(pr.rho == Rational(12));
    CHECK(rho(1) == Rational(1));
    CHECK(rho(7) == Rational(7, 3));
    CHECK(profile(30).mobius == -1);
    for (std::uint64_t n = 1; n < 300; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 1; k <= n; ++k) count += gcd(k, n) == 1;
        REQUIRE(euler_phi(n) == count);
    }
}

TEST_CASE("kronecker")
{
    CHECK(kronecker(12345, 1) == 1);
    CHECK(kronecker(-4, 7) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-8, 3) == 1);
    CHECK(kronecker(-8, 5) == -1);
    for (std::uint64_t p : sieve_primes(400)) {
        if (p == 2) continue;
        for (i128 a = -60; a <= 60; ++a) REQUIRE(kronecker(a, p) == euler_legendre(a, p));
    }
    // multiplicative in n
    for (i128 a : {-20, -7, -4, -3, 5, 8, 12, 13})
        for (i128 x = 1; x < 40; ++x)
            for (i128 y = 1; y < 40; ++y) REQUIRE(kronecker(a, x * y) == kronecker(a, x) * kronecker(a, y));
    CHECK(legendre(2, 7) == 1);
    CHECK_THROWS_AS(legendre(2, 4), DomainError);
}

TEST_CASE("crt")
{
    const i128 r1[] = {2, 3}, m1[] = {3, 5};
    auto s = crt(r1, m1);
    CHECK(s.solution == 8);
    CHECK(s.modulus == 15);
    const i128 r2[] = {0}, m2[] = {7};
    s = crt(r2, m2);
    CHECK((s.solution == 0 && s.modulus == 7));
    const i128 r3[] = {1, 1, 1}, m3[] = {2, 3, 5};
    s = crt(r3, m3);
    CHECK((s.solution == 1 && s.modulus == 30));
    const i128 r4[] = {1, 3}, m4[] = {4, 6};
    s = crt(r4, m4);
    CHECK((s.solution == 9 && s.modulus == 12));
    const i128 r5[] = {1, 2}, m5[] = {4, 6};
    CHECK_THROWS_AS(crt(r5, m5), DomainError);
}

TEST_CASE("ord_p and inverses")
{
    CHECK(ord_p(12, 2) == 2);
    CHECK(ord_p(7, 2) == 0);
    CHECK(ord_p(8 * (3 - 2) * 5, 2) == 3);
    CHECK(ord_p(-50, 5) == 2);
    CHECK_THROWS_AS(ord_p(0, 2), DomainError);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(2, 4), DomainError);
    const std::uint64_t ps[] = {3, 5, 7};
    CHECK(product(ps) == 105);
}

TEST_CASE("Rational")
{
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-3, 2).floor() == -2);
    CHECK(Rational(-3, 2).ceil() == -1);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
}
