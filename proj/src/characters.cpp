#include "polyreg/characters.hpp"

#include <algorithm>
#include <numeric>

#include "polyreg/numthy.hpp"

namespace polyreg::characters {

namespace nt = polyreg::numthy;
using enclosure::BigInt;
using enclosure::Interval;
using enclosure::Verdict;

namespace {

int nu0(i128 n) { return mod(n, 4) == 1 ? 1 : -1; }

int nu1(i128 n)
{
    i128 r = mod(n, 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

BigRational pow2(long e)
{
    if (e >= 0) return BigRational(BigInt(1) << e);
    return BigRational(BigInt(1), BigInt(1) << -e);
}

Interval pv_interval(std::uint64_t k, unsigned bits)
{
    BigRational kk(k);
    Interval s = enclosure::sqrt(kk, bits);
    Interval l = enclosure::log(kk, bits);
    Interval l3 = enclosure::log(BigRational(3), bits);
    Interval three = Interval::point(3);
    return s * l / (three * l3) + Interval::point(BigRational(13, 2)) * s;
}

// log log n, n >= 3.
Interval loglog(std::uint64_t n, unsigned bits) { return enclosure::log(enclosure::log(BigRational(n), bits), bits); }

} // namespace

int RealCharacter::operator()(i128 n) const
{
    if (gcd(n, static_cast<i128>(modulus)) != 1) return 0;
    int v = 1;
    switch (two) {
    case Two::none: break;
    case Two::nu0: v = nu0(n); break;
    case Two::nu1: v = nu1(n); break;
    case Two::nu0nu1: v = nu0(n) * nu1(n); break;
    }
    for (auto p : odd_primes) v *= nt::legendre(n, p);
    return v;
}

std::uint64_t RealCharacter::conductor() const
{
    std::uint64_t c = two == Two::none ? 1 : (two == Two::nu0 ? 4 : 8);
    for (auto p : odd_primes) c *= p;
    return c;
}

std::string RealCharacter::name() const
{
    std::string s;
    auto add = [&](const std::string& part) { s += (s.empty() ? "" : "*") + part; };
    if (two == Two::nu0 || two == Two::nu0nu1) add("nu0");
    if (two == Two::nu1 || two == Two::nu0nu1) add("nu1");
    for (auto p : odd_primes) add("(./" + std::to_string(p) + ")");
    return s.empty() ? "1" : s;
}

int CharacterSystem::value(i128 n) const
{
    int v = 1;
    for (const auto& c : components) v *= c(n);
    return v;
}

std::vector<std::optional<std::uint64_t>> CharacterSystem::independence_witnesses() const
{
    std::vector<std::optional<std::uint64_t>> out;
    for (unsigned mask = 1; mask < (1u << r()); ++mask) {
        std::optional<std::uint64_t> w;
        for (std::uint64_t n = 1; n <= Gamma && !w; ++n) {
            if (std::gcd(n, Gamma) != 1) continue;
            int v = 1;
            for (unsigned i = 0; i < r(); ++i)
                if (mask >> i & 1u) v *= components[i](n);
            if (v == -1) w = n;
        }
        out.push_back(w);
    }
    return out;
}

std::vector<SignAssignment> all_sign_assignments(unsigned r)
{
    std::vector<SignAssignment> out;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        SignAssignment s;
        for (unsigned i = 0; i < r; ++i) s.etas.push_back(mask >> (r - 1 - i) & 1u ? 1 : -1);
        out.push_back(std::move(s));
    }
    return out;
}

CharacterSystem decompose(i128 D)
{
    i128 r4 = mod(D, 4);
    require(r4 == 0 || r4 == 1, "decompose: discriminant must be 0 or 1 mod 4");
    require(D < 0 || isqrt(D) * isqrt(D) != D, "decompose: discriminant is a perfect square");
    CharacterSystem sys;
    sys.D = D;
    sys.d = static_cast<std::uint64_t>(iabs(D));
    auto f = nt::factorize(sys.d);
    unsigned e = 0;
    for (const auto& pp : f.factors)
        if (pp.prime == 2) e = pp.exponent;
    i128 odd = D / ipow(2, e);
    bool three = mod(odd, 4) == 3;
    RealCharacter::Two two = RealCharacter::Two::none;
    if (e % 2 == 1) two = three ? RealCharacter::Two::nu0nu1 : RealCharacter::Two::nu1;
    else if (three) two = RealCharacter::Two::nu0;
    auto push = [&](RealCharacter c) {
        c.modulus = c.conductor();
        sys.Gamma = std::lcm(sys.Gamma, c.modulus);
        sys.components.push_back(std::move(c));
    };
    if (two != RealCharacter::Two::none) push(RealCharacter{two, {}, 1});
    for (const auto& pp : f.factors)
        if (pp.prime != 2 && pp.exponent % 2 == 1) push(RealCharacter{RealCharacter::Two::none, {pp.prime}, 1});
    return sys;
}

std::uint64_t count_S(std::uint64_t x, std::uint64_t H, const CharacterSystem& sys, const SignAssignment& eta,
                      std::uint64_t M)
{
    require(eta.etas.size() == sys.r(), "count_S: sign assignment length differs from r");
    std::uint64_t count = 0;
    for (std::uint64_t n = x + 1; n < x + H; ++n) {
        if (std::gcd(n, M) != 1) continue;
        bool match = true;
        for (unsigned i = 0; i < sys.r() && match; ++i) match = sys.components[i](n) == eta.etas[i];
        count += match;
    }
    return count;
}

SignHistogram::SignHistogram(const CharacterSystem& sys, std::uint64_t M) : r_(sys.r())
{
    std::uint64_t radM = 1;
    for (auto p : nt::prime_divisors(M)) radM *= p;
    period_ = std::lcm(sys.Gamma, radM);
    const std::uint64_t width = std::uint64_t(1) << r_;
    if ((period_ + 1) * width > (std::uint64_t(1) << 27)) throw ResourceError("SignHistogram: period too large");
    prefix_.assign((period_ + 1) * width, 0);
    for (std::uint64_t n = 1; n <= period_; ++n) {
        std::copy_n(prefix_.begin() + (n - 1) * width, width, prefix_.begin() + n * width);
        if (std::gcd(n, M) != 1) continue;
        unsigned code = 0;
        bool live = true;
        for (unsigned i = 0; i < r_ && live; ++i) {
            int v = sys.components[i](n);
            live = v != 0;
            if (v == -1) code |= 1u << i;
        }
        if (live) ++prefix_[n * width + code];
    }
}

std::uint64_t SignHistogram::upto(std::uint64_t X, unsigned code) const
{
    const std::uint64_t width = std::uint64_t(1) << r_;
    return (X / period_) * prefix_[period_ * width + code] + prefix_[(X % period_) * width + code];
}

std::uint64_t SignHistogram::count(std::uint64_t x, std::uint64_t H, const SignAssignment& eta) const
{
    require(eta.etas.size() == r_, "SignHistogram: sign assignment length differs from r");
    unsigned code = 0;
    for (unsigned i = 0; i < r_; ++i)
        if (eta.etas[i] == -1) code |= 1u << i;
    return upto(x + H - 1, code) - upto(x, code);
}

BigRational pv_bound(std::uint64_t k)
{
    require(k >= 2, "pv_bound: modulus must be at least 2");
    return enclosure::round_up(pv_interval(k, 96).hi, 64);
}

BigRational lower_bound_S(std::uint64_t H, std::uint64_t Gamma, std::uint64_t M, unsigned r)
{
    require(Gamma >= 2 && M >= 1 && r >= 1, "lower_bound_S: need Gamma >= 2, M >= 1, r >= 1");
    require(std::gcd(Gamma, M) == 1, "lower_bound_S: Gamma and M must be coprime");
    const std::uint64_t GM = Gamma * M;
    BigRational main = BigRational(H) * BigRational(nt::euler_phi(GM)) / (BigRational(GM) * pow2(r));
    BigRational second = pow2(static_cast<long>(nt::omega(GM)) - static_cast<long>(r) + 1);
    BigRational third = pow2(nt::omega(M)) * (pow2(r) - 1) / pow2(r) * pv_bound(Gamma);
    return main - second - third;
}

BigRational f_bound(std::uint64_t d, std::uint64_t M)
{
    const std::uint64_t n = d * M;
    return BigRational(2 * n) * pow2(nt::omega(n)) / BigRational(nt::euler_phi(n)) * (pv_bound(d) + 1);
}

PvCheck verify_pv(const RealCharacter& chi, i128 x, i128 y)
{
    require(!chi.principal(), "verify_pv: character is principal");
    require(x < y, "verify_pv: need x < y");
    i128 sum = 0;
    for (i128 n = x + 1; n <= y; ++n) sum += chi(n);
    BigRational bound = pv_bound(chi.modulus);
    return {sum, bound, BigRational(static_cast<long long>(iabs(sum))) <= bound};
}

PvCheck verify_pv_all_ranges(const RealCharacter& chi, std::uint64_t ymax)
{
    require(!chi.principal(), "verify_pv: character is principal");
    i128 prefix = 0, lo = 0, hi = 0;
    for (std::uint64_t n = 1; n <= ymax; ++n) {
        prefix += chi(n);
        lo = std::min(lo, prefix);
        hi = std::max(hi, prefix);
    }
    i128 worst = hi - lo;
    BigRational bound = pv_bound(chi.modulus);
    return {worst, bound, BigRational(static_cast<long long>(worst)) <= bound};
}

std::vector<RealCharacter> real_characters(std::uint64_t k)
{
    using Two = RealCharacter::Two;
    std::vector<std::uint64_t> odd;
    for (auto p : nt::prime_divisors(k))
        if (p != 2) odd.push_back(p);
    std::vector<Two> twos{Two::none};
    if (k % 4 == 0) twos.push_back(Two::nu0);
    if (k % 8 == 0) {
        twos.push_back(Two::nu1);
        twos.push_back(Two::nu0nu1);
    }
    std::vector<RealCharacter> out;
    for (Two t : twos)
        for (unsigned mask = 0; mask < (1u << odd.size()); ++mask) {
            RealCharacter c{t, {}, k};
            for (unsigned i = 0; i < odd.size(); ++i)
                if (mask >> i & 1u) c.odd_primes.push_back(odd[i]);
            if (!c.principal()) out.push_back(std::move(c));
        }
    return out;
}

InertPrimeResult least_inert_prime(i128 D, std::uint64_t M)
{
    require(M >= 2, "least_inert_prime: need M >= 2");
    require(gcd(D, static_cast<i128>(M)) == 1, "least_inert_prime: gcd(D, M) must be 1");
    i128 r4 = mod(D, 4);
    require((r4 == 0 || r4 == 1) && (D < 0 || isqrt(D) * isqrt(D) != D),
            "least_inert_prime: D must be a non-square discriminant");
    BigInt d(static_cast<long long>(iabs(D)));
    BigInt radicand = enclosure::BigInt(kC0);
    radicand = radicand * radicand * radicand;
    radicand = radicand * radicand * d * d * d * d * BigInt(M);
    BigInt H = enclosure::iroot_ceil(radicand, 6);
    std::uint64_t q = 2;
    for (;; q = nt::next_prime(q)) {
        ensure(BigInt(q) < H, "least_inert_prime: no inert prime below the explicit bound");
        if (M % q != 0 && nt::kronecker(D, q) == -1) break;
    }
    return {q, H, static_cast<double>(q) / static_cast<double>(H)};
}

ProofInequalities verify_proof_inequalities(std::uint64_t d, std::uint64_t M)
{
    require(d >= 3 && M >= 1, "verify_proof_inequalities: need d >= 3");
    const std::uint64_t n = d * M;
    require(n >= 6, "verify_proof_inequalities: need dM >= 6");
    const unsigned w = nt::omega(n);
    ProofInequalities out{};

    out.eq31 = enclosure::resolve([&](unsigned bits) {
        Interval lhs = pv_interval(d, bits) + Interval::point(1);
        Interval rhs = Interval::point(14) * enclosure::pow(BigRational(d), 51, 100, bits);
        return enclosure::certainly_le(lhs, rhs);
    });

    auto rs = [&](unsigned bits) {
        Interval ll = loglog(n, bits);
        return Interval::point(BigRational(9, 5)) * ll + Interval::point(BigRational(251, 100)) / ll;
    };
    bool rs_holds = enclosure::resolve([&](unsigned bits) {
        return enclosure::certainly_le(Interval::point(BigRational(n) / BigRational(nt::euler_phi(n))), rs(bits));
    });
    bool rs_power = enclosure::resolve([&](unsigned bits) {
        return enclosure::certainly_le(rs(bits), Interval::point(6) * enclosure::root(BigRational(n), 168, bits));
    });
    out.eq32 = rs_holds && rs_power;

    out.small_case = w <= 2;
    if (n >= 11) {
        auto robin = [&](unsigned bits) {
            Interval l = enclosure::log(BigRational(n), bits);
            Interval ll = loglog(n, bits);
            return l / ll + Interval::point(BigRational(145743, 100000)) * l / (ll * ll);
        };
        bool omega_holds = enclosure::resolve(
            [&](unsigned bits) { return enclosure::certainly_le(Interval::point(w), robin(bits)); });
        // 2^robin <= 123 n^(211/1400), compared after taking logs.
        bool power = enclosure::resolve([&](unsigned bits) {
            Interval lhs = robin(bits) * enclosure::ln2(bits);
            Interval rhs = enclosure::log(BigRational(123), bits) +
                           Interval::point(BigRational(211, 1400)) * enclosure::log(BigRational(n), bits);
            return enclosure::certainly_le(lhs, rhs);
        });
        out.eq33 = omega_holds && power;
    }
    return out;
}

} // namespace polyreg::characters
