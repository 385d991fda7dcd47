#include "polyreg/rational.hpp"

#include <algorithm>

namespace polyreg {

i128 isqrt(i128 n)
{
    require(n >= 0, "isqrt of negative value");
    if (n < 2) return n;
    // Newton from a power-of-two upper bound.
    int bits = 0;
    for (u128 t = static_cast<u128>(n); t != 0; t >>= 1) ++bits;
    i128 x = i128(1) << ((bits + 1) / 2);
    while (true) {
        i128 y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while (x * x > n) --x;
    while ((x + 1) <= n / (x + 1)) ++x;
    return x;
}

std::string to_string(i128 v)
{
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
    std::string s;
    while (u != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

i128 parse_i128(const std::string& s)
{
    require(!s.empty(), "empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    require(i < s.size(), "malformed integer literal");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        require(s[i] >= '0' && s[i] <= '9', "malformed integer literal");
        v = add(mul(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

Rational::Rational(i128 num, i128 den)
{
    require(den != 0, "zero denominator");
    if (den < 0) {
        num = sub(0, num);
        den = sub(0, den);
    }
    i128 g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

i128 Rational::floor() const
{
    i128 q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

i128 Rational::ceil() const
{
    i128 q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

double Rational::to_double() const
{
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const
{
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    i128 g = gcd(a.den_, b.den_);
    i128 den = mul(a.den_ / g, b.den_);
    i128 num = add(mul(a.num_, b.den_ / g), mul(b.num_, a.den_ / g));
    return Rational(num, den);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b)
{
    i128 g1 = gcd(a.num_, b.den_);
    i128 g2 = gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b)
{
    require(b.num_ != 0, "division by zero rational");
    return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    // Cross-multiplication may overflow; fall back to comparing via floor parts.
    i128 lhs, rhs;
    if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) && !__builtin_mul_overflow(b.num_, a.den_, &rhs))
        return lhs <=> rhs;
    i128 fa = a.floor(), fb = b.floor();
    if (fa != fb) return fa <=> fb;
    Rational ra = a - Rational(fa), rb = b - Rational(fb);
    // Both fractional parts in [0,1): compare reciprocals with reversed order.
    if (ra.num_ == 0 || rb.num_ == 0) return ra.num_ <=> rb.num_;
    return Rational(rb.den_, rb.num_) <=> Rational(ra.den_, ra.num_);
}

} // namespace polyreg
