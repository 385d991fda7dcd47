#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"

#include "polyreg/characters.hpp"
#include "polyreg/enclosure.hpp"
#include "polyreg/errors.hpp"
#include "polyreg/numthy.hpp"

using namespace polyreg;
using namespace polyreg::characters;
using enclosure::BigRational;

namespace {

using Dec = boost::multiprecision::cpp_dec_float_50;

Dec as_dec(const BigRational& v)
{
    return Dec(boost::multiprecision::numerator(v)) / Dec(boost::multiprecision::denominator(v));
}

SignAssignment signs(std::vector<int> e) { return SignAssignment{std::move(e)}; }

} // namespace

TEST_CASE("decompose reproduces the Kronecker symbol")
{
    auto s = decompose(-4);
    REQUIRE(s.r() == 1);
    CHECK(s.components[0].two == RealCharacter::Two::nu0);
    CHECK(s.Gamma == 4);
    s = decompose(5);
    REQUIRE(s.r() == 1);
    CHECK(s.components[0].odd_primes == std::vector<std::uint64_t>{5});
    CHECK(s.Gamma == 5);
    s = decompose(-8);
    REQUIRE(s.r() == 1);
    CHECK(s.components[0].two == RealCharacter::Two::nu0nu1);
    CHECK(s.Gamma == 8);

    for (i128 D = -200; D <= 200; ++D) {
        if (D == 0 || mod(D, 4) == 2 || mod(D, 4) == 3) continue;
        if (D > 0 && isqrt(D) * isqrt(D) == D) continue;
        const auto sys = decompose(D);
        for (i128 n = 1; n <= 2 * static_cast<i128>(sys.Gamma); ++n) {
            if (gcd(n, D) != 1) continue;
            REQUIRE(sys.value(n) == numthy::kronecker(D, n));
        }
        for (const auto& w : sys.independence_witnesses()) CHECK(w.has_value());
    }
    CHECK_THROWS_AS(decompose(9), DomainError);
    CHECK_THROWS_AS(decompose(-6), DomainError);
}

TEST_CASE("count_S")
{
    const auto m4 = decompose(-4);
    CHECK(count_S(0, 20, m4, signs({-1}), 1) == 5);
    CHECK(count_S(0, 20, m4, signs({-1}), 3) == 3);
    CHECK(count_S(0, 1, decompose(5), signs({-1}), 10) == 0);
    CHECK(all_sign_assignments(2).size() == 4);

    // the periodic histogram is a faster count of the same set
    std::mt19937_64 rng(3);
    for (i128 D : {-4, -8, 5, -20, 12, -84, 60}) {
        const auto sys = decompose(D);
        for (std::uint64_t M : {1, 7, 11, 13}) {
            if (gcd(M, sys.Gamma) != 1) continue;
            const SignHistogram h(sys, M);
            for (int k = 0; k < 30; ++k) {
                const std::uint64_t x = rng() % 5000, H = rng() % 3000 + 1;
                for (const auto& eta : all_sign_assignments(sys.r()))
                    REQUIRE(h.count(x, H, eta) == count_S(x, H, sys, eta, M));
            }
        }
    }
}

TEST_CASE("lower_bound_S")
{
    CHECK(lower_bound_S(1'000'000, 4, 1, 1) > 0);
    CHECK(lower_bound_S(1, 4, 1, 1) < 0);
    CHECK_THROWS_AS(lower_bound_S(100, 4, 2, 1), DomainError);
    // smallest power of two with a positive bound, then the count there
    std::uint64_t H = 1;
    while (lower_bound_S(H, 4, 3, 1) <= 0) H *= 2;
    const auto sys = decompose(-4);
    for (const auto& eta : all_sign_assignments(1)) CHECK(count_S(0, H, sys, eta, 3) >= 1);
}

TEST_CASE("pv_bound")
{
    // 2 log k / (3 log 3) + 13 at k = 4 is 13.8412...; the returned bound
    // is an upper value within 0.5 of it
    const Dec v4 = 2 * boost::multiprecision::log(Dec(4)) / (3 * boost::multiprecision::log(Dec(3))) + 13;
    CHECK(as_dec(pv_bound(4)) >= v4);
    CHECK(as_dec(pv_bound(4)) <= v4 + Dec("0.5"));
    CHECK(pv_bound(9) >= BigRational(43, 2));
    CHECK(as_dec(pv_bound(2)) >= 13 * boost::multiprecision::sqrt(Dec(2)) / 2);
}

TEST_CASE("verify_pv")
{
    const auto nu0 = decompose(-4).components[0];
    auto r = verify_pv(nu0, 0, 4);
    CHECK(r.sum == 0);
    CHECK(r.ok);
    r = verify_pv(decompose(5).components[0], 0, 3);
    CHECK(r.sum == -1);
    CHECK(r.ok);
    r = verify_pv(decompose(-8).components[0], 0, 5);
    CHECK(r.sum == 1);
    CHECK(r.ok);
    CHECK_THROWS_AS(verify_pv(RealCharacter{}, 0, 5), DomainError);

    // every nonprincipal character modulo k is nonprincipal and has modulus k
    for (std::uint64_t k = 2; k <= 40; ++k)
        for (const auto& chi : real_characters(k)) {
            CHECK_FALSE(chi.principal());
            CHECK(chi.modulus == k);
            CHECK(verify_pv_all_ranges(chi, 2 * k).ok);
        }
}

TEST_CASE("least_inert_prime")
{
    CHECK(least_inert_prime(-4, 5).q == 3);
    CHECK(least_inert_prime(-4, 3).q == 7);
    CHECK(least_inert_prime(-3, 2).q == 5);
    CHECK_THROWS_AS(least_inert_prime(-4, 6), DomainError);
    for (i128 D : {-4, -3, -8, 5, 12, -420}) {
        for (std::uint64_t M : {2, 11, 13 * 17}) {
            if (gcd(D, M) != 1) continue;
            const auto r = least_inert_prime(D, M);
            CHECK(numthy::kronecker(D, r.q) == -1);
            CHECK(M % r.q != 0);
            for (std::uint64_t p = 2; p < r.q; ++p)
                if (numthy::is_prime(p)) CHECK((numthy::kronecker(D, p) != -1 || M % p == 0));
            CHECK(r.ratio < 1);
        }
    }
}

TEST_CASE("verify_proof_inequalities")
{
    auto v = verify_proof_inequalities(3, 2);
    CHECK(v.eq31);
    CHECK(v.eq32);
    CHECK_FALSE(v.eq33.has_value());
    CHECK(v.all());
    v = verify_proof_inequalities(4, 3);
    CHECK(v.eq33.value_or(false));
    CHECK(v.all());
    CHECK(verify_proof_inequalities(10000, 10000).all());
}
