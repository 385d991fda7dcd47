#include "polyreg/numthy.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace polyreg::numthy {

namespace {

// Odd-only sieve over [0, limit]; bit i stands for 2i+1.
std::vector<bool> odd_composites(std::uint64_t limit)
{
    std::vector<bool> composite(limit / 2 + 1, false);
    for (std::uint64_t i = 3; i * i <= limit; i += 2) {
        if (composite[i / 2]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j / 2] = true;
    }
    return composite;
}

std::uint64_t pollard_brent(std::uint64_t n)
{
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_brent(n);
    split(d, out);
    split(n / d, out);
}

} // namespace

std::vector<std::uint64_t> Factorization::primes() const
{
    std::vector<std::uint64_t> ps;
    ps.reserve(factors.size());
    for (const auto& f : factors) ps.push_back(f.prime);
    return ps;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::uint64_t budget_bytes)
{
    require(limit >= 2, "sieve_primes: limit must be at least 2");
    if (limit / 16 + 1 > budget_bytes) throw ResourceError("sieve_primes: limit exceeds memory budget");
    auto composite = odd_composites(limit);
    std::vector<std::uint64_t> primes{2};
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i)
        if (!composite[i]) primes.push_back(2 * i + 1);
    return primes;
}

std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint64_t limit)
{
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> cached;
    static std::uint64_t cached_limit = 0;

    if (limit > 0xFFFFFFFBull) throw ResourceError("prime_table: limit beyond 32-bit range");
    std::lock_guard lock(mu);
    if (cached && cached_limit >= limit) return cached;
    // Grow geometrically so repeated small extensions stay cheap.
    std::uint64_t target = std::max<std::uint64_t>({limit, 2 * cached_limit, 1u << 16});
    target = std::min<std::uint64_t>(target, 0xFFFFFFFBull);
    auto composite = odd_composites(target);
    auto table = std::make_shared<std::vector<std::uint32_t>>();
    table->push_back(2);
    for (std::uint64_t i = 1; 2 * i + 1 <= target; ++i)
        if (!composite[i]) table->push_back(static_cast<std::uint32_t>(2 * i + 1));
    cached = table;
    cached_limit = target;
    return cached;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n)
{
    if (n < 2) return 2;
    std::uint64_t c = n % 2 == 0 ? n + 1 : n + 2;
    while (!is_prime(c)) c += 2;
    return c;
}

Factorization factorize(std::uint64_t n)
{
    require(n >= 1, "factorize: n must be positive");
    Factorization f;
    f.n = n;
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ps.push_back(p);
            n /= p;
        }
    }
    split(n, ps);
    std::sort(ps.begin(), ps.end());
    for (std::uint64_t p : ps) {
        if (!f.factors.empty() && f.factors.back().prime == p)
            ++f.factors.back().exponent;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    return factorize(n).primes();
}

MultiplicativeProfile profile(std::uint64_t n)
{
    auto f = factorize(n);
    MultiplicativeProfile prof{n, n, 0, 1, Rational(1)};
    for (const auto& [p, e] : f.factors) {
        prof.phi = prof.phi / p * (p - 1);
        ++prof.omega;
        prof.mobius = e > 1 ? 0 : -prof.mobius;
    }
    prof.rho = Rational(mul(i128(1) << prof.omega, i128(n)), i128(prof.phi));
    return prof;
}

std::uint64_t euler_phi(std::uint64_t n) { return profile(n).phi; }
unsigned omega(std::uint64_t n) { return profile(n).omega; }
Rational rho(std::uint64_t n) { return profile(n).rho; }

int kronecker(i128 a, i128 n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0) return 0;
        int a8 = static_cast<int>(mod(a, 8));
        if ((v & 1) && (a8 == 3 || a8 == 5)) s = -s;
    }
    // Jacobi symbol (a/n), n odd positive.
    i128 x = mod(a, n);
    i128 y = n;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            int y8 = static_cast<int>(y & 7);
            if (y8 == 3 || y8 == 5) s = -s;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3) s = -s;
        x %= y;
    }
    return y == 1 ? s : 0;
}

int legendre(i128 a, std::uint64_t p)
{
    require(p > 2 && p % 2 == 1, "legendre: p must be an odd prime");
    return kronecker(a, static_cast<i128>(p));
}

i128 mod_inverse(i128 a, i128 m)
{
    require(m >= 1, "mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    i128 r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw DomainError("mod_inverse: argument not invertible");
    return mod(s0, m);
}

CrtSolution crt(std::span<const i128> residues, std::span<const i128> moduli)
{
    require(residues.size() == moduli.size(), "crt: residues and moduli differ in length");
    i128 x = 0, m = 1;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        i128 mj = moduli[j];
        require(mj >= 1, "crt: moduli must be positive");
        i128 rj = mod(residues[j], mj);
        i128 g = gcd(m, mj);
        i128 diff = sub(rj, x);
        if (mod(diff, g) != 0) throw DomainError("crt: inconsistent congruences, no solution");
        i128 m_g = m / g, mj_g = mj / g;
        i128 t = mod(mul(mod(diff / g, mj_g), mod_inverse(m_g, mj_g)), mj_g);
        i128 new_m = mul(m, mj_g);
        x = mod(add(x, mul(m, t)), new_m);
        m = new_m;
    }
    return {x, m};
}

unsigned ord_p(i128 n, i128 p)
{
    require(n != 0, "ord_p: valuation of zero is infinite");
    require(p >= 2 && p <= i128(UINT64_MAX) && is_prime(static_cast<std::uint64_t>(p)), "ord_p: p must be prime");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i128 product(std::span<const std::uint64_t> primes)
{
    i128 r = 1;
    for (auto p : primes) r = mul(r, static_cast<i128>(p));
    return r;
}

} // namespace polyreg::numthy
