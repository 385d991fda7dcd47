#include <random>

#include "doctest.h"

#include "polyreg/errors.hpp"
#include "polyreg/local.hpp"
#include "polyreg/numthy.hpp"
#include "polyreg/polyforms.hpp"
#include "polyreg/regularity.hpp"

using namespace polyreg;
using namespace polyreg::regularity;

namespace {

bool sum_of_two_squares(i128 n)
{
    for (i128 x = 0; x * x <= n; ++x) {
        const i128 r = isqrt(n - x * x);
        if (r * r == n - x * x) return true;
    }
    return false;
}

// N = a(2(m-2)x - (m-4))^2 + b(2(m-2)y - (m-4))^2 by direct enumeration
bool phi2_brute(i128 m, i128 a, i128 b, i128 N)
{
    for (i128 x = -200; x <= 200; ++x) {
        const i128 u = 2 * (m - 2) * x - (m - 4);
        if (a * u * u > N) continue;
        for (i128 y = -200; y <= 200; ++y) {
            const i128 v = 2 * (m - 2) * y - (m - 4);
            if (a * u * u + b * v * v == N) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("kkO_count")
{
    auto r = kkO_count(0, 1, 10, {2});
    CHECK(r.count == 5);
    CHECK(r.lower == Rational(4));
    // {1, 3, 5, 7, 9} keeps 1, 5, 7
    r = kkO_count(1, 2, 5, {3});
    CHECK(r.count == 3);
    CHECK(r.lower == Rational(7, 3));
    r = kkO_count(3, 5, 17, {});
    CHECK(r.count == 17);
    CHECK(r.lower == Rational(17));
    CHECK_THROWS_AS(kkO_count(0, 3, 10, {3}), DomainError);
}

TEST_CASE("K and the constants")
{
    CHECK(K_value(3, 1, 1, 1) == Rational(24));
    CHECK(kC2 == 512 * 11);
    const auto L = bound_ledger(3, 1, 1, 1);
    CHECK(L.rhs_a == Rational(8));
    CHECK(L.rhs_b == Rational(704));
    CHECK(L.a_ok);
    CHECK(L.b_ok);
    CHECK(L.C2.lo == 5632);
    CHECK(L.C2.hi == 5632);
    CHECK(L.C0.lo == 20664);
    const auto L6 = bound_ledger(6, 1, 1, 1);
    CHECK(L6.rhs_c.positive());
    CHECK(L6.rhs_c.lo >= 1);
    CHECK(L6.c_ok);
}

TEST_CASE("inert_sequence")
{
    auto s = inert_sequence(3, 1, 1, 1, 4);
    CHECK(s.q0 == 3);
    CHECK(std::vector<std::uint64_t>(s.qs.begin(), s.qs.begin() + 4) == std::vector<std::uint64_t>{7, 11, 19, 23});
    s = inert_sequence(5, 1, 1, 1, 3);
    CHECK(s.q0 == 7);
    CHECK(std::vector<std::uint64_t>(s.qs.begin(), s.qs.begin() + 3) == std::vector<std::uint64_t>{11, 19, 23});
    CHECK(inert_sequence(3, 1, 2, 1).q0 == 5);

    // membership, order and the threshold straddle
    for (i128 m : {4, 6, 9})
        for (auto [a, b, c] : {std::array<i128, 3>{1, 2, 3}, {2, 3, 1}, {1, 1, 5}}) {
            auto q = inert_sequence(m, a, b, c);
            REQUIRE(q.qs.size() > q.i0);
            for (std::size_t i = 0; i < q.qs.size(); ++i) {
                REQUIRE(numthy::kronecker(-4 * a * b, q.qs[i]) == -1);
                REQUIRE(q.qs[i] != q.q0);
                REQUIRE((m - 2) % q.qs[i] != 0);
                if (i) REQUIRE(q.qs[i - 1] < q.qs[i]);
            }
            if (q.i0 >= 1) CHECK(BigRational(q.q(q.i0)) <= q.threshold_value.hi);
            CHECK(BigRational(q.q(q.i0 + 1)) > q.threshold_value.lo);
        }
}

TEST_CASE("verify_eq34")
{
    auto s = inert_sequence(5, 1, 1, 1);
    auto e = verify_eq34(s, s.K, s.i0, s.i0 + 10);
    CHECK(e.size() == 11);
    for (bool v : e) CHECK(v);
    e = verify_eq34(s, s.K, s.i0 + 25, s.i0 + 35);
    for (bool v : e) CHECK(v);

    auto s4 = inert_sequence(4, 1, 1, 1);
    REQUIRE(s4.i0 >= 1);
    CHECK_THROWS_AS(verify_eq34(s4, s4.K, s4.i0 - 1, s4.i0 + 2), DomainError);
    auto s3 = inert_sequence(3, 1, 1, 1);
    CHECK_THROWS_AS(verify_eq34(s3, s3.K, s3.i0, s3.i0 + 2), DomainError);
}

TEST_CASE("construct_N0_pair")
{
    const auto w = construct_N0_pair(3, 1, 1, 1);
    CHECK(w.N == 11);
    CHECK(w.v == 0);
    CHECK(w.w0 == 1);
    REQUIRE(w.v_bar.has_value());
    CHECK(*w.v_bar == 1);
    CHECK(*w.N_bar == 19);
    CHECK(w.n <= 8);
}

TEST_CASE("construct_Ni")
{
    auto s = inert_sequence(3, 1, 1, 1, 2);
    const auto w = construct_Ni(3, 1, 1, 1, s, 1);
    CHECK(w.q == 7);
    CHECK(mod(w.N, 8) == 2);
    CHECK(mod(w.N, 9) == 2);
    CHECK(numthy::ord_p(w.N, 7) == 1);
    CHECK(w.N == 8 * w.n + 2);
    CHECK(w.n <= 24 * 9 * 7);
    CHECK_FALSE(phi_binary_represents(3, 1, 1, w.N));

    std::mt19937_64 rng(31);
    for (int k = 0; k < 15; ++k) {
        const i128 m = 4 + rng() % 6, a = 1 + rng() % 4, b = a + rng() % 4, c = 1 + rng() % 5;
        if (gcd(gcd(a, b), c) != 1) continue;
        auto q = inert_sequence(m, a, b, c, 10);
        const std::size_t i = 1 + rng() % 10;
        const auto wi = construct_Ni(m, a, b, c, q, i);
        CHECK(numthy::ord_p(wi.N, q.q(i)) == 1);
        CHECK(wi.N == 8 * (m - 2) * wi.n + (m - 4) * (m - 4) * (a + b));
        CHECK(binary_nonrepresentation_check(m, a, b, wi.N, q.q(i)));
        CHECK_FALSE(phi2_brute(m, a, b, wi.N));
    }
}

TEST_CASE("binary forms")
{
    CHECK(binary_nonrepresentation_check(4, 1, 1, 3, 3));
    CHECK(binary_nonrepresentation_check(3, 1, 1, 7 * 2, 7));
    CHECK_THROWS_AS(binary_nonrepresentation_check(4, 1, 1, 5, 5), DomainError);
    for (i128 N = 0; N < 3000; ++N) {
        REQUIRE(phi_binary_represents(4, 1, 1, N) == (N % 16 == 0 && sum_of_two_squares(N / 16)));
        REQUIRE(phi_binary_represents(3, 1, 2, N) == phi2_brute(3, 1, 2, N));
        REQUIRE(phi_binary_represents(7, 2, 3, N) == phi2_brute(7, 2, 3, N));
    }
}

TEST_CASE("exceptions")
{
    CHECK(exceptions(polyforms::PolygonalForm(4, {1, 1, 1}), 10000).exceptions.empty());
    CHECK(exceptions(polyforms::PolygonalForm(3, {1, 1, 1}), 10000).exceptions.empty());
    const polyforms::PolygonalForm f(4, {1, 1, 5});
    const auto r = exceptions(f, 1000);
    local::LocalChecker lc(4, {1, 1, 5});
    for (auto n : r.exceptions) {
        CHECK(lc.represented(n));
        CHECK_FALSE(polyforms::represents(f, n).xyz.has_value());
    }

    // a report at N is a prefix of the report at 2N
    for (auto g : {polyforms::PolygonalForm(3, {1, 1, 7}), polyforms::PolygonalForm(5, {1, 2, 3}),
                   polyforms::PolygonalForm(7, {1, 1, 2})}) {
        const auto small = exceptions(g, 3000), big = exceptions(g, 6000);
        REQUIRE(small.exceptions.size() <= big.exceptions.size());
        CHECK(std::equal(small.exceptions.begin(), small.exceptions.end(), big.exceptions.begin()));
        for (std::size_t k = small.exceptions.size(); k < big.exceptions.size(); ++k)
            CHECK(big.exceptions[k] > 3000);
    }
    const auto lim = exceptions(polyforms::PolygonalForm(3, {1, 1, 7}), 100000, kDefaultBudget, 1);
    CHECK(lim.truncated);
    CHECK(lim.exceptions == std::vector<std::uint64_t>{5});
    const auto tiny = exceptions(polyforms::PolygonalForm(3, {1, 1, 1}), 1'000'000, 4096);
    CHECK_FALSE(tiny.scan_complete);
    CHECK(tiny.scanned_to < 1'000'000);
}

TEST_CASE("search")
{
    auto r = search(4, 1, 10000);
    REQUIRE(r.triples.size() == 1);
    CHECK(r.triples[0].status == Status::candidate_regular);
    r = search(3, 1, 10000);
    CHECK(r.triples[0].status == Status::candidate_regular);

    SearchOptions one, three;
    three.threads = 3;
    const auto a = search(3, 6, 100000, one), b = search(3, 6, 100000, three);
    CHECK(a == b);
    const auto c = search(3, 6, 200000, three);
    CHECK(a.candidates() == c.candidates());
    for (const auto& t : a.triples) {
        if (t.status != Status::candidate_regular) continue;
        REQUIRE(t.ledger.has_value());
        CHECK(t.ledger->a_ok);
        CHECK(t.ledger->b_ok);
    }
    CHECK(status_from_name(status_name(Status::needs_descent)) == Status::needs_descent);
}

TEST_CASE("Dickson inequality for binary forms")
{
    // primes not represented by x^2 + 2y^2 start 5, 7, 13; with i0 = 0 the
    // inequality fails at i = 0 (5 < 1) and i = 1 (7 < 5)
    const auto d2 = dickson_check(2);
    CHECK(std::vector<std::uint64_t>(d2.primes.begin(), d2.primes.begin() + 3) ==
          std::vector<std::uint64_t>{5, 7, 13});
    CHECK(d2.i0 == 0);
    CHECK_FALSE(d2.all());
    const auto d5 = dickson_check(5);
    CHECK(std::vector<std::uint64_t>(d5.primes.begin(), d5.primes.begin() + 3) ==
          std::vector<std::uint64_t>{3, 7, 11});
    CHECK(d5.i0 == 1);
    for (std::size_t i = 2; i < d5.primes.size(); ++i) CHECK(d5.holds[i - d5.i0]);
}
