#include <random>

#include "doctest.h"

#include "polyreg/local.hpp"
#include "polyreg/numthy.hpp"
#include "polyreg/polyforms.hpp"

using namespace polyreg;
using namespace polyreg::local;

namespace {

bool three_square_excluded(i128 n)
{
    if (n == 0) return false;
    while (n % 4 == 0) n /= 4;
    return n % 8 == 7;
}

} // namespace

TEST_CASE("partition")
{
    auto p = partition(3, 1, 1, 1);
    CHECK(p.P_all().empty());
    CHECK(p.G_all().empty());
    CHECK(p.P_abc == 1);
    CHECK(p.delta == 0);
    p = partition(3, 1, 1, 7);
    CHECK(p.P_c_ab == std::vector<std::uint64_t>{7});
    CHECK(p.P_c == 7);
    CHECK(p.P_abc == 7);
    p = partition(8, 2, 6, 3);
    CHECK(p.G_bc.empty());
    CHECK(p.delta == 1);

    for (i128 m = 3; m <= 14; ++m)
        for (i128 a = 1; a <= 8; ++a)
            for (i128 b = a; b <= 8; ++b)
                for (i128 c = b; c <= 8; ++c) {
                    const auto q = partition(m, a, b, c);
                    CHECK(q.P_abc == q.P_ab * q.P_c);
                    CHECK(q.delta == (m % 4 == 0 ? 1 : 0));
                    for (auto x : q.P_all())
                        for (auto y : q.G_all()) CHECK(x != y);
                    for (auto r : q.P_a_bc) {
                        CHECK(a % r == 0);
                        CHECK(numthy::kronecker(-4 * b * c, r) == -1);
                        CHECK((m - 2) % r != 0);
                    }
                }
}

TEST_CASE("padic_solvable examples")
{
    const std::vector<i128> ones{1, 1, 1};
    CHECK_FALSE(padic_solvable(4, ones, 16 * 7, 2).represented);
    CHECK(padic_solvable(4, ones, 16 * 1, 2).represented);
    CHECK(padic_solvable(3, ones, 8 * 1 + 3, 5).represented);

    const PrimePartition p111 = partition(3, 1, 1, 1);
    const auto fp = fast_path(3, {1, 1, 1}, 2, 5, p111);
    REQUIRE(fp.has_value());
    CHECK(fp->represented);
    CHECK(fp->rule == Rule::FastPathII);

    const PrimePartition p117 = partition(3, 1, 1, 7);
    const auto f3 = fast_path(3, {1, 1, 7}, 2, 7, p117);
    REQUIRE(f3.has_value());
    CHECK(f3->represented);
    // N = 8n + 9 = 49 at n = 5: no criterion applies
    CHECK_FALSE(fast_path(3, {1, 1, 7}, 5, 7, p117).has_value());
}

TEST_CASE("locally_represented against the three-square theorem")
{
    const auto v7 = locally_represented(4, {1, 1, 1}, 7);
    CHECK_FALSE(v7.verdict);
    REQUIRE(v7.per_prime.count(2));
    CHECK_FALSE(v7.per_prime.at(2).represented);
    CHECK(locally_represented(4, {1, 1, 1}, 6).verdict);
    for (i128 n = 1; n <= 100; ++n) CHECK(locally_represented(3, {1, 1, 1}, n).verdict);

    LocalChecker lc(4, {1, 1, 1}, Mode::full);
    for (i128 n = 1; n <= 2000; ++n) REQUIRE(lc.represented(n) == !three_square_excluded(n));
}

TEST_CASE("fast paths agree with the engine and certificates re-check")
{
    std::mt19937_64 rng(23);
    const auto primes = numthy::sieve_primes(50);
    int fired = 0;
    for (int k = 0; k < 10000; ++k) {
        const i128 m = 3 + rng() % 10;
        std::array<i128, 3> abc{1 + i128(rng() % 10), 1 + i128(rng() % 10), 1 + i128(rng() % 10)};
        if (gcd(gcd(abc[0], abc[1]), abc[2]) != 1) continue;
        const i128 n = 1 + rng() % 500;
        const std::uint64_t p = primes[rng() % primes.size()];
        const auto part = partition(m, abc[0], abc[1], abc[2]);
        const i128 N = polyforms::target_N(m, abc, n);
        const auto full = padic_solvable(m, abc, N, p);
        if (full.certificate) REQUIRE(check_certificate(m, abc, N, p, *full.certificate));
        CHECK(padic_solvable(m, abc, N, p, 2).represented == full.represented);
        if (const auto fp = fast_path(m, abc, n, p, part)) {
            ++fired;
            REQUIRE(fp->represented == full.represented);
        }
    }
    CHECK(fired > 1000);
}

TEST_CASE("global representation implies local representation")
{
    std::mt19937_64 rng(29);
    for (int k = 0; k < 1000; ++k) {
        const i128 m = 3 + rng() % 10;
        const std::array<i128, 3> abc{1 + i128(rng() % 10), 1 + i128(rng() % 10), 1 + i128(rng() % 10)};
        const i128 n = 1 + rng() % 300;
        const polyforms::PolygonalForm f(m, {abc[0], abc[1], abc[2]});
        if (polyforms::represents(f, n).xyz) REQUIRE(locally_represented(m, abc, n).verdict);
    }
}

TEST_CASE("automatic and full modes agree")
{
    for (i128 m : {3, 5, 8, 12})
        for (std::array<i128, 3> abc : {std::array<i128, 3>{1, 2, 3}, {1, 1, 6}, {2, 3, 5}, {1, 4, 9}}) {
            LocalChecker fast(m, abc, Mode::automatic), slow(m, abc, Mode::full);
            for (i128 n = 1; n <= 400; ++n) REQUIRE(fast.represented(n) == slow.represented(n));
        }
}
