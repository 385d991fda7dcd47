#pragma once

#include <cstdint>
#include <string>

#include "polyreg/errors.hpp"

namespace polyreg {

using i128 = __int128;
using u128 = unsigned __int128;

// Checked 128-bit arithmetic. Overflow throws ResourceError instead of wrapping.

inline i128 add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("128-bit overflow in addition");
    return r;
}

inline i128 sub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("128-bit overflow in subtraction");
    return r;
}

inline i128 mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("128-bit overflow in multiplication");
    return r;
}

inline i128 ipow(i128 base, unsigned e)
{
    i128 r = 1;
    while (e != 0) {
        if (e & 1u) r = mul(r, base);
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return r;
}

inline i128 iabs(i128 a)
{
    if (a < 0) return sub(0, a);
    return a;
}

/// Floor modulus: result in [0, m) for m > 0.
inline i128 mod(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

inline i128 gcd(i128 a, i128 b)
{
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i128 lcm(i128 a, i128 b)
{
    if (a == 0 || b == 0) return 0;
    return mul(iabs(a) / gcd(a, b), iabs(b));
}

/// Exact floor(sqrt(n)) for n >= 0.
i128 isqrt(i128 n);

std::string to_string(i128 v);
i128 parse_i128(const std::string& s);

} // namespace polyreg
