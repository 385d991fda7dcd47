#include "polyreg/polyforms.hpp"

#include <algorithm>

namespace polyreg::polyforms {

namespace {

// Largest y >= 0 with a*p_m(sign*y) <= n.
i128 side_bound(i128 m, i128 a, i128 n, int sign)
{
    i128 y = isqrt(mul(2, n) / mul(a, m - 2)) + 1;
    while (y > 0 && mul(a, polygonal_number(m, sign * y)) > n) --y;
    while (mul(a, polygonal_number(m, sign * (y + 1))) <= n) ++y;
    return y;
}

// Integer z with c*p_m(z) = r, if any.
std::optional<i128> solve_last(i128 m, i128 c, i128 r)
{
    if (r < 0 || r % c != 0) return std::nullopt;
    i128 t = r / c;
    i128 disc = add(mul(m - 4, m - 4), mul(mul(8, m - 2), t));
    i128 s = isqrt(disc);
    if (s * s != disc) return std::nullopt;
    const i128 den = 2 * (m - 2);
    for (i128 num : {(m - 4) + s, (m - 4) - s})
        if (num % den == 0) return num / den;
    return std::nullopt;
}

bool search(const PolygonalForm& f, std::size_t i, i128 remaining, std::vector<i128>& xs)
{
    const i128 a = f.coeffs[i];
    if (i + 1 == f.coeffs.size()) {
        auto z = solve_last(f.m, a, remaining);
        if (!z) return false;
        xs[i] = *z;
        return true;
    }
    const i128 X = static_cast<i128>(coordinate_bound(f.m, a, remaining));
    for (i128 x = -X; x <= X; ++x) {
        i128 v = mul(a, polygonal_number(f.m, x));
        if (v > remaining) continue;
        xs[i] = x;
        if (search(f, i + 1, remaining - v, xs)) return true;
    }
    return false;
}

} // namespace

PolygonalForm::PolygonalForm(i128 m_, std::vector<i128> coeffs_) : m(m_), coeffs(std::move(coeffs_))
{
    require(m >= 3, "polygonal form: m must be at least 3");
    require(!coeffs.empty() && coeffs.size() <= 3, "polygonal form: one to three coefficients");
    for (i128 a : coeffs) require(a >= 1, "polygonal form: coefficients must be positive");
}

bool PolygonalForm::primitive() const
{
    i128 g = 0;
    for (i128 a : coeffs) g = gcd(g, a);
    return g == 1;
}

bool PolygonalForm::ordered() const { return std::is_sorted(coeffs.begin(), coeffs.end()); }

i128 PolygonalForm::discriminant() const
{
    i128 d = 1;
    for (i128 a : coeffs) d = mul(d, a);
    return d;
}

i128 PolygonalForm::coeff_sum() const
{
    i128 s = 0;
    for (i128 a : coeffs) s = add(s, a);
    return s;
}

std::string PolygonalForm::str() const
{
    std::string s = "m=" + to_string(m) + " (";
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + to_string(coeffs[i]);
    return s + ")";
}

i128 polygonal_number(i128 m, i128 x)
{
    require(m >= 3, "polygonal_number: m must be at least 3");
    // (m-2)x^2 - (m-4)x = x((m-2)x - (m-4)) is always even.
    return mul(x, sub(mul(m - 2, x), m - 4)) / 2;
}

i128 evaluate(const PolygonalForm& form, std::span<const i128> xs)
{
    require(xs.size() == form.coeffs.size(), "evaluate: arity mismatch");
    i128 s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) s = add(s, mul(form.coeffs[i], polygonal_number(form.m, xs[i])));
    return s;
}

i128 phi_evaluate(i128 m, std::span<const i128> coeffs, std::span<const i128> xs)
{
    require(m >= 3, "phi_evaluate: m must be at least 3");
    require(xs.size() == coeffs.size(), "phi_evaluate: arity mismatch");
    i128 s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        i128 y = sub(mul(2 * (m - 2), xs[i]), m - 4);
        s = add(s, mul(coeffs[i], mul(y, y)));
    }
    return s;
}

i128 target_N(i128 m, std::span<const i128> coeffs, i128 n)
{
    i128 sum = 0;
    for (i128 a : coeffs) sum = add(sum, a);
    return add(mul(mul(8, m - 2), n), mul(mul(m - 4, m - 4), sum));
}

std::uint64_t coordinate_bound(i128 m, i128 a, i128 n)
{
    require(m >= 3 && a >= 1, "coordinate_bound: need m >= 3, a >= 1");
    if (n < 0) return 0;
    return static_cast<std::uint64_t>(std::max(side_bound(m, a, n, 1), side_bound(m, a, n, -1)));
}

RepresentationWitness represents(const PolygonalForm& form, i128 n)
{
    RepresentationWitness w{n, std::nullopt};
    if (n < 0) return w;
    std::vector<i128> xs(form.coeffs.size(), 0);
    if (search(form, 0, n, xs)) {
        ensure(evaluate(form, xs) == n, "represents: witness does not evaluate to n");
        w.xyz = xs;
    }
    return w;
}

std::vector<std::uint64_t> unary_values(i128 m, i128 a, std::uint64_t n_max)
{
    const i128 X = static_cast<i128>(coordinate_bound(m, a, static_cast<i128>(n_max)));
    std::vector<std::uint64_t> out;
    for (i128 x = -X; x <= X; ++x) {
        i128 v = mul(a, polygonal_number(m, x));
        if (v <= static_cast<i128>(n_max)) out.push_back(static_cast<std::uint64_t>(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Bitset represented_set(const PolygonalForm& form, std::uint64_t n_max, std::uint64_t budget_bytes)
{
    const std::uint64_t bytes = 2 * ((n_max + 64) / 64) * 8;
    if (bytes > budget_bytes) throw ResourceError("represented_set: memory budget exceeded");
    std::vector<i128> cs = form.coeffs;
    std::sort(cs.begin(), cs.end());
    Bitset acc(n_max + 1);
    for (auto v : unary_values(form.m, cs[0], n_max)) acc.set(v);
    // Larger coefficients have fewer values, so they drive the shifts.
    for (std::size_t i = 1; i < cs.size(); ++i) {
        Bitset next(n_max + 1);
        for (auto v : unary_values(form.m, cs[i], n_max)) next.or_shifted(acc, v);
        acc = std::move(next);
    }
    return acc;
}

} // namespace polyreg::polyforms
