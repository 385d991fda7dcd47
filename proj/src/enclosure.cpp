#include "polyreg/enclosure.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "polyreg/errors.hpp"

namespace polyreg::enclosure {

namespace mp = boost::multiprecision;

namespace {

long msb_of(const BigInt& v) { return static_cast<long>(mp::msb(v)); }

BigInt pow_int(const BigInt& b, unsigned long e)
{
    BigInt r = 1, base = b;
    while (e != 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return r;
}

BigRational pow_rat(const BigRational& x, unsigned long e)
{
    return BigRational(pow_int(mp::numerator(x), e), pow_int(mp::denominator(x), e));
}

BigInt pow2(unsigned long e) { return BigInt(1) << e; }

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

// atanh(n/d) * 2^w enclosed in [lo, hi], for 0 <= n/d <= 1/3.
std::pair<BigInt, BigInt> atanh_fixed(const BigInt& n, const BigInt& d, unsigned w)
{
    if (n == 0) return {0, 0};
    const BigInt n2 = n * n, d2 = d * d;
    BigInt p_lo = (n << w) / d;
    BigInt p_hi = ceil_div(n << w, d);
    BigInt s_lo = 0, s_hi = 0;
    unsigned long j = 0;
    for (;; ++j) {
        const BigInt k = 2 * j + 1;
        s_lo += p_lo / k;
        s_hi += ceil_div(p_hi, k);
        p_lo = (p_lo * n2) / d2;
        p_hi = ceil_div(p_hi * n2, d2);
        if (p_hi <= 1) break;
    }
    // Tail after term j: sum_{i>j} z^(2i+1)/(2i+1) <= z^(2j+3)/((2j+3)(1-z^2)), z^2 <= 1/9.
    const BigInt k = 2 * (j + 1) + 1;
    s_hi += ceil_div(9 * p_hi, 8 * k) + 1;
    return {s_lo, s_hi};
}

Interval scale_int(long e, const Interval& v)
{
    BigRational f(e);
    if (e >= 0) return {f * v.lo, f * v.hi};
    return {f * v.hi, f * v.lo};
}

} // namespace

BigRational to_big(const Rational& r)
{
    return BigRational(to_big(r.num())) / BigRational(to_big(r.den()));
}

BigRational to_big(i128 v)
{
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigRational(-r) : BigRational(r);
}

BigRational round_down(const BigRational& x, unsigned bits)
{
    if (x == 0) return x;
    if (x < 0) return -round_up(-x, bits);
    const BigInt& n = mp::numerator(x);
    const BigInt& d = mp::denominator(x);
    long s = static_cast<long>(bits) - (msb_of(n) - msb_of(d));
    if (s >= 0) return BigRational((n << s) / d, pow2(s));
    BigInt q = n / (d << -s);
    return BigRational(q << -s);
}

BigRational round_up(const BigRational& x, unsigned bits)
{
    if (x == 0) return x;
    if (x < 0) return -round_down(-x, bits);
    const BigInt& n = mp::numerator(x);
    const BigInt& d = mp::denominator(x);
    long s = static_cast<long>(bits) - (msb_of(n) - msb_of(d));
    if (s >= 0) return BigRational(ceil_div(n << s, d), pow2(s));
    BigInt q = ceil_div(n, d << -s);
    return BigRational(q << -s);
}

BigInt iroot_floor(const BigInt& n, unsigned q)
{
    require(n >= 0, "iroot_floor: negative radicand");
    require(q >= 1, "iroot_floor: root index must be positive");
    if (n < 2 || q == 1) return n;
    BigInt x = BigInt(1) << (msb_of(n) / q + 1);
    while (true) {
        BigInt y = ((q - 1) * x + n / pow_int(x, q - 1)) / q;
        if (y >= x) break;
        x = y;
    }
    while (pow_int(x, q) > n) --x;
    while (pow_int(x + 1, q) <= n) ++x;
    return x;
}

BigInt iroot_ceil(const BigInt& n, unsigned q)
{
    BigInt r = iroot_floor(n, q);
    if (pow_int(r, q) == n) return r;
    return r + 1;
}

Interval::Interval(BigRational l, BigRational h) : lo(std::move(l)), hi(std::move(h))
{
    if (lo > hi) throw InvariantViolation("interval with lo > hi");
}

double Interval::relative_width() const
{
    if (lo == 0) return hi == 0 ? 0.0 : 1e300;
    BigRational r = (hi - lo) / (lo < 0 ? BigRational(-lo) : lo);
    return static_cast<double>(r);
}

double Interval::mid() const { return static_cast<double>((lo + hi) / 2); }

std::string Interval::str(int digits) const
{
    return "[" + to_decimal(lo, digits) + ", " + to_decimal(hi, digits) + "]";
}

Interval Interval::tightened(unsigned bits) const { return {round_down(lo, bits), round_up(hi, bits)}; }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b)
{
    if (a.lo >= 0 && b.lo >= 0) return {a.lo * b.lo, a.hi * b.hi};
    BigRational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.lo <= 0 && b.hi >= 0) throw DomainError("interval division by an interval containing zero");
    Interval inv{1 / b.hi, 1 / b.lo};
    return a * inv;
}

Verdict certainly_le(const Interval& a, const Interval& b)
{
    if (a.hi <= b.lo) return Verdict::yes;
    if (a.lo > b.hi) return Verdict::no;
    return Verdict::unknown;
}

Verdict certainly_lt(const Interval& a, const Interval& b)
{
    if (a.hi < b.lo) return Verdict::yes;
    if (a.lo >= b.hi) return Verdict::no;
    return Verdict::unknown;
}

bool resolve(const std::function<Verdict(unsigned)>& compare, unsigned start_bits, unsigned max_bits)
{
    for (unsigned bits = start_bits; bits <= max_bits; bits *= 2) {
        Verdict v = compare(bits);
        if (v != Verdict::unknown) return v == Verdict::yes;
    }
    throw InvariantViolation("enclosure comparison unresolved at maximum precision");
}

Interval root(const BigRational& x, unsigned q, unsigned bits)
{
    require(x >= 0, "root: negative argument");
    require(q >= 1, "root: index must be positive");
    if (x == 0) return Interval::point(0);
    const BigInt& n = mp::numerator(x);
    const BigInt& d = mp::denominator(x);
    long mag = (msb_of(n) - msb_of(d)) / static_cast<long>(q);
    long s = std::max<long>(0, static_cast<long>(bits) + 2 - mag);
    BigInt scaled = n << (static_cast<unsigned long>(s) * q);
    BigInt m = scaled / d;
    bool exact_div = (scaled % d) == 0;
    BigInt r = iroot_floor(m, q);
    BigRational lo(r, pow2(s));
    if (exact_div && pow_int(r, q) == m) return Interval::point(lo);
    return {lo, BigRational(r + 1, pow2(s))};
}

Interval sqrt(const BigRational& x, unsigned bits) { return root(x, 2, bits); }

Interval pow(const BigRational& x, long p, long q, unsigned bits)
{
    require(x > 0, "pow: base must be positive");
    require(q >= 1, "pow: exponent denominator must be positive");
    long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    unsigned long ap = static_cast<unsigned long>(p < 0 ? -p : p);
    Interval r = root(pow_rat(x, ap), static_cast<unsigned>(q), bits + 8);
    if (p < 0) r = Interval{1 / r.hi, 1 / r.lo};
    return r.tightened(bits + 4);
}

Interval ln2(unsigned bits)
{
    unsigned w = bits + 40;
    auto [lo, hi] = atanh_fixed(1, 3, w);
    return Interval{BigRational(2 * lo, pow2(w)), BigRational(2 * hi, pow2(w))}.tightened(bits + 8);
}

Interval log(const BigRational& x, unsigned bits)
{
    require(x > 0, "log: argument must be positive");
    const BigInt& n = mp::numerator(x);
    const BigInt& d = mp::denominator(x);
    long e = msb_of(n) - msb_of(d);
    // y = x / 2^e lies in [1/2, 2); shift into [1, 2).
    BigRational y = e >= 0 ? x / BigRational(pow2(e)) : x * BigRational(pow2(-e));
    if (y < 1) {
        y *= 2;
        --e;
    }
    // z = (y-1)/(y+1) in [0, 1/3).
    BigRational z = (y - 1) / (y + 1);
    unsigned w = bits + 40 + static_cast<unsigned>(std::max<long>(0, msb_of(BigInt(e < 0 ? -e : e) + 1)));
    auto [lo, hi] = atanh_fixed(mp::numerator(z), mp::denominator(z), w);
    Interval lny{BigRational(2 * lo, pow2(w)), BigRational(2 * hi, pow2(w))};
    Interval result = lny;
    if (e != 0) result = result + scale_int(e, ln2(w));
    return result.tightened(bits + 8);
}

Interval log(const Interval& x, unsigned bits)
{
    require(x.lo > 0, "log: interval must be positive");
    return {log(x.lo, bits).lo, log(x.hi, bits).hi};
}

PowerProduct& PowerProduct::times(const BigRational& base, long num, long den)
{
    require(base > 0, "PowerProduct: base must be positive");
    require(den >= 1, "PowerProduct: exponent denominator must be positive");
    if (num == 0 || base == 1) return *this;
    long g = std::gcd(num < 0 ? -num : num, den);
    factors_.push_back({base, num / g, den / g});
    return *this;
}

PowerProduct& PowerProduct::times(const PowerProduct& other, long num, long den)
{
    for (const auto& f : other.factors_) times(f.base, f.num * num, f.den * den);
    return *this;
}

Interval PowerProduct::enclose(unsigned bits) const
{
    Interval acc = Interval::point(1);
    unsigned work = bits + 8 + static_cast<unsigned>(factors_.size());
    for (const auto& f : factors_) acc = (acc * pow(f.base, f.num, f.den, work)).tightened(work);
    return acc.tightened(bits);
}

std::strong_ordering compare(const PowerProduct& a, const PowerProduct& b)
{
    long l = 1;
    for (const auto* side : {&a, &b})
        for (const auto& f : side->factors_) l = std::lcm(l, f.den);
    BigRational left = 1, right = 1;
    auto apply = [&](const PowerProduct::Factor& f, int sign) {
        long e = f.num * (l / f.den) * sign;
        if (e > 0) left *= pow_rat(f.base, static_cast<unsigned long>(e));
        if (e < 0) right *= pow_rat(f.base, static_cast<unsigned long>(-e));
    };
    for (const auto& f : a.factors_) apply(f, 1);
    for (const auto& f : b.factors_) apply(f, -1);
    if (left < right) return std::strong_ordering::less;
    if (left > right) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_decimal(const BigRational& v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(v));
    return buf;
}

} // namespace polyreg::enclosure
