#include <random>
#include <set>

#include "doctest.h"

#include "polyreg/bitset.hpp"
#include "polyreg/errors.hpp"
#include "polyreg/kernels.hpp"
#include "polyreg/polyforms.hpp"

using namespace polyreg;
using namespace polyreg::polyforms;

namespace {

// all values a*p_m(x) + ... <= n_max by a direct triple loop
std::set<std::uint64_t> brute_values(const PolygonalForm& f, std::uint64_t n_max)
{
    std::vector<std::vector<i128>> unary;
    for (auto a : f.coeffs) {
        std::vector<i128> vals;
        for (i128 x = -200; x <= 200; ++x) {
            const i128 v = a * polygonal_number(f.m, x);
            if (v <= static_cast<i128>(n_max)) vals.push_back(v);
        }
        unary.push_back(vals);
    }
    std::set<std::uint64_t> out{0};
    std::set<i128> acc{0};
    for (const auto& vals : unary) {
        std::set<i128> next;
        for (auto s : acc)
            for (auto v : vals)
                if (s + v <= static_cast<i128>(n_max)) next.insert(s + v);
        acc = next;
    }
    out.clear();
    for (auto v : acc) out.insert(static_cast<std::uint64_t>(v));
    return out;
}

} // namespace

TEST_CASE("polygonal_number")
{
    for (i128 m = 3; m < 20; ++m) {
        CHECK(polygonal_number(m, 0) == 0);
        CHECK(polygonal_number(m, 1) == 1);
        for (i128 x = -50; x <= 50; ++x) CHECK(polygonal_number(m, x) >= 0);
    }
    CHECK(polygonal_number(5, 3) == 12);
    CHECK(polygonal_number(3, -2) == 1);
    for (i128 x = -1000; x <= 1000; ++x) REQUIRE(polygonal_number(4, x) == x * x);
    CHECK_THROWS_AS(polygonal_number(2, 1), DomainError);
}

TEST_CASE("evaluate and the completed square")
{
    CHECK(evaluate(PolygonalForm(3, {1, 1, 1}), std::vector<i128>{1, 1, 1}) == 3);
    CHECK(evaluate(PolygonalForm(4, {1, 1, 1}), std::vector<i128>{1, 2, 3}) == 14);
    CHECK(evaluate(PolygonalForm(5, {1, 2, 3}), std::vector<i128>{1, 1, 0}) == 3);
    const std::vector<i128> ones{1, 1, 1};
    CHECK(phi_evaluate(3, ones, std::vector<i128>{0, 0, 0}) == 3);
    CHECK(phi_evaluate(4, ones, std::vector<i128>{1, 0, 0}) == 16);

    std::mt19937_64 rng(11);
    for (int k = 0; k < 10000; ++k) {
        const i128 m = 3 + rng() % 48;
        std::vector<i128> c{1 + i128(rng() % 50), 1 + i128(rng() % 50), 1 + i128(rng() % 50)};
        std::vector<i128> x{i128(rng() % 101) - 50, i128(rng() % 101) - 50, i128(rng() % 101) - 50};
        const PolygonalForm f(m, c);
        REQUIRE(target_N(m, c, evaluate(f, x)) == phi_evaluate(m, c, x));
    }
}

TEST_CASE("coordinate_bound")
{
    // p_3(4) = 10 and p_3(-4) = 6 fit under 10; p_3(-5) = 10 also does
    CHECK(coordinate_bound(3, 1, 10) == 5);
    CHECK(coordinate_bound(4, 1, 0) == 0);
    for (i128 m = 3; m < 12; ++m)
        for (i128 a = 1; a < 5; ++a)
            for (i128 n = 0; n < 300; n += 7) {
                const auto X = static_cast<i128>(coordinate_bound(m, a, n));
                for (i128 x = -X - 30; x <= X + 30; ++x)
                    if (a * polygonal_number(m, x) <= n) REQUIRE((x >= -X && x <= X));
                CHECK((X == 0 || a * polygonal_number(m, X) <= n || a * polygonal_number(m, -X) <= n));
            }
}

TEST_CASE("represents")
{
    const auto w = represents(PolygonalForm(3, {1, 1, 1}), 5);
    REQUIRE(w.xyz.has_value());
    CHECK(evaluate(PolygonalForm(3, {1, 1, 1}), *w.xyz) == 5);
    CHECK_FALSE(represents(PolygonalForm(4, {1, 1, 1}), 7).xyz.has_value());
    const auto z = represents(PolygonalForm(7, {2, 3, 5}), 0);
    REQUIRE(z.xyz.has_value());
    CHECK(*z.xyz == std::vector<i128>{0, 0, 0});
}

TEST_CASE("represented_set")
{
    auto s = represented_set(PolygonalForm(4, {1, 1, 1}), 30);
    std::vector<std::size_t> missing;
    for (std::size_t n = 0; n <= 30; ++n)
        if (!s.test(n)) missing.push_back(n);
    CHECK(missing == std::vector<std::size_t>{7, 15, 23, 28});
    s = represented_set(PolygonalForm(3, {1, 1, 1}), 20);
    CHECK(s.count() == 21);
    s = represented_set(PolygonalForm(9, {4, 5, 6}), 0);
    CHECK((s.size() == 1 && s.test(0)));
    CHECK_THROWS_AS(represented_set(PolygonalForm(4, {1, 1, 1}), 1'000'000, 64), ResourceError);

    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const PolygonalForm f(3 + rng() % 10, {1 + i128(rng() % 6), 1 + i128(rng() % 6), 1 + i128(rng() % 9)});
        const auto set = represented_set(f, 2000);
        const auto brute = brute_values(f, 2000);
        for (std::uint64_t n = 0; n <= 2000; ++n) {
            REQUIRE(set.test(n) == (brute.count(n) == 1));
            REQUIRE(represents(f, n).xyz.has_value() == set.test(n));
        }
    }
}

TEST_CASE("scalar and AVX2 kernels agree")
{
    if (!kernels::available(kernels::Isa::avx2)) return;
    const auto& sc = kernels::table(kernels::Isa::scalar);
    const auto& vx = kernels::table(kernels::Isa::avx2);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 400; ++k) {
        const std::size_t n = 1 + rng() % 70;
        std::vector<kernels::Word> a(n), b(n);
        for (auto& w : a) w = rng();
        for (auto& w : b) w = rng();
        const std::size_t shift = rng() % (64 * n + 10);
        auto d1 = a, d2 = a;
        sc.or_shifted(d1.data(), b.data(), n, shift);
        vx.or_shifted(d2.data(), b.data(), n, shift);
        REQUIRE(d1 == d2);
        d1 = a;
        d2 = a;
        sc.or_shifted(d1.data(), d1.data(), n, shift);
        vx.or_shifted(d2.data(), d2.data(), n, shift);
        REQUIRE(d1 == d2);
        sc.andnot(d1.data(), a.data(), b.data(), n);
        vx.andnot(d2.data(), a.data(), b.data(), n);
        REQUIRE(d1 == d2);
        REQUIRE(sc.popcount(a.data(), n) == vx.popcount(a.data(), n));
    }

    const auto before = kernels::active_isa();
    const PolygonalForm f(5, {1, 2, 3});
    kernels::set_isa(kernels::Isa::scalar);
    const auto s1 = represented_set(f, 50000);
    kernels::set_isa(kernels::Isa::avx2);
    const auto s2 = represented_set(f, 50000);
    kernels::set_isa(before);
    CHECK(s1 == s2);
}

TEST_CASE("Bitset")
{
    Bitset b(200);
    b.set(3);
    b.set(130);
    CHECK(b.count() == 2);
    CHECK(b.find_next(4) == 130);
    CHECK(b.find_next(131) == 200);
    CHECK(b.find_next_clear(3) == 4);
    CHECK(b.ones() == std::vector<std::size_t>{3, 130});
    Bitset c(200);
    c.or_shifted(b, 69);
    CHECK(c.ones() == std::vector<std::size_t>{72, 199});
    c.andnot(b);
    CHECK(c.count() == 2);
    Bitset full(130);
    for (std::size_t i = 0; i < 130; ++i) full.set(i);
    CHECK(full.find_next_clear(0) == 130);
}
