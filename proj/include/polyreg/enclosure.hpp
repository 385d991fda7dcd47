#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyreg/rational.hpp"

/// Certified real arithmetic: closed rational intervals whose endpoints are
/// produced with directed rounding, so every enclosure contains the true
/// real value. Used wherever an inequality involves sqrt, log or a
/// fractional power.
namespace polyreg::enclosure {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Default working precision, in bits relative to the magnitude.
inline constexpr unsigned kDefaultBits = 160;

BigRational to_big(const Rational& r);
BigRational to_big(i128 v);

/// Largest dyadic with `bits` significant bits that is <= x (resp. >= x).
BigRational round_down(const BigRational& x, unsigned bits);
BigRational round_up(const BigRational& x, unsigned bits);

/// floor(N^(1/q)) for N >= 0.
BigInt iroot_floor(const BigInt& n, unsigned q);
/// ceil(N^(1/q)) for N >= 0.
BigInt iroot_ceil(const BigInt& n, unsigned q);

struct Interval {
    BigRational lo;
    BigRational hi;

    Interval() = default;
    Interval(BigRational l, BigRational h);
    static Interval point(const BigRational& v) { return {v, v}; }

    bool contains(const BigRational& v) const { return lo <= v && v <= hi; }
    bool positive() const { return lo > 0; }
    BigRational width() const { return hi - lo; }
    /// Width divided by |lo| (lo must be nonzero).
    double relative_width() const;
    double mid() const;
    std::string str(int digits = 12) const;

    /// Outward rounding of both endpoints to `bits` significant bits.
    Interval tightened(unsigned bits) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

/// a <= b certainly (a.hi <= b.lo), certainly not (a.lo > b.hi), or unknown.
enum class Verdict { yes, no, unknown };
Verdict certainly_le(const Interval& a, const Interval& b);
Verdict certainly_lt(const Interval& a, const Interval& b);

/// Re-evaluate `compare(bits)` with doubling precision until it resolves.
/// Throws InvariantViolation when still unresolved at `max_bits`.
bool resolve(const std::function<Verdict(unsigned)>& compare, unsigned start_bits = 96, unsigned max_bits = 8192);

Interval sqrt(const BigRational& x, unsigned bits = kDefaultBits);
/// x^(1/q), x >= 0, q >= 1.
Interval root(const BigRational& x, unsigned q, unsigned bits = kDefaultBits);
/// x^(p/q) for x > 0 and any integer p, q >= 1.
Interval pow(const BigRational& x, long p, long q, unsigned bits = kDefaultBits);
/// Natural logarithm of x > 0.
Interval log(const BigRational& x, unsigned bits = kDefaultBits);
/// Natural logarithm of a positive interval.
Interval log(const Interval& x, unsigned bits = kDefaultBits);
Interval ln2(unsigned bits = kDefaultBits);

/// A product of rational powers  prod base_i^(p_i/q_i)  with positive
/// rational bases. Supports exact comparison (by raising both sides to the
/// lcm of the exponent denominators) and certified enclosure.
class PowerProduct {
public:
    struct Factor {
        BigRational base;
        long num;
        long den;
    };

    PowerProduct() = default;
    explicit PowerProduct(const BigRational& c) { times(c); }

    PowerProduct& times(const BigRational& base, long num = 1, long den = 1);
    PowerProduct& times(const PowerProduct& other, long num = 1, long den = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    Interval enclose(unsigned bits = kDefaultBits) const;

    friend std::strong_ordering compare(const PowerProduct& a, const PowerProduct& b);
    friend bool operator<(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) < 0; }
    friend bool operator<=(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) <= 0; }

private:
    std::vector<Factor> factors_;
};

std::string to_decimal(const BigRational& v, int digits = 12);

} // namespace polyreg::enclosure
