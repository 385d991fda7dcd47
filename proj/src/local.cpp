#include "polyreg/local.hpp"

#include <algorithm>
#include <limits>

#include "polyreg/numthy.hpp"

namespace polyreg::local {

namespace nt = polyreg::numthy;

namespace {

constexpr unsigned kInf = std::numeric_limits<unsigned>::max();

unsigned val(i128 n, std::uint64_t p) { return n == 0 ? kInf : nt::ord_p(n, static_cast<i128>(p)); }

// p^e, or 0 when it exceeds `cap`.
i128 ppow(std::uint64_t p, unsigned e, i128 cap)
{
    i128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > cap / static_cast<i128>(p)) return 0;
        r *= static_cast<i128>(p);
    }
    return r;
}

// a*b mod M for 0 <= a, b < M < 2^63.
i128 mm(i128 a, i128 b, i128 M)
{
    return static_cast<i128>((static_cast<u128>(a) * static_cast<u128>(b)) % static_cast<u128>(M));
}

std::vector<std::uint64_t> merged(std::initializer_list<const std::vector<std::uint64_t>*> parts)
{
    std::vector<std::uint64_t> out;
    for (auto* v : parts) out.insert(out.end(), v->begin(), v->end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> P_set(i128 m, i128 l1, i128 l2)
{
    std::vector<std::uint64_t> out;
    for (auto q : nt::prime_divisors(static_cast<std::uint64_t>(l1)))
        if (nt::kronecker(mul(-4, l2), q) == -1 && (m - 2) % static_cast<i128>(q) != 0) out.push_back(q);
    return out;
}

std::vector<std::uint64_t> G_set(i128 m, i128 l1, i128 l2)
{
    std::vector<std::uint64_t> out;
    for (auto q : nt::prime_divisors(static_cast<std::uint64_t>(gcd(l1, l2))))
        if (mul(2, m - 2) % static_cast<i128>(q) != 0) out.push_back(q);
    return out;
}

i128 prod(const std::vector<std::uint64_t>& v) { return nt::product(v); }

} // namespace

std::vector<std::uint64_t> PrimePartition::P_all() const { return merged({&P_a_bc, &P_b_ac, &P_c_ab}); }
std::vector<std::uint64_t> PrimePartition::G_all() const { return merged({&G_ab, &G_ac, &G_bc}); }

PrimePartition partition(i128 m, i128 a, i128 b, i128 c)
{
    require(m >= 3, "partition: m must be at least 3");
    require(a >= 1 && b >= 1 && c >= 1, "partition: coefficients must be positive");
    PrimePartition p;
    p.m = m;
    p.a = a;
    p.b = b;
    p.c = c;
    p.delta = nt::ord_p(m, 2) >= 2 ? 1 : 0;
    p.P_a_bc = P_set(m, a, mul(b, c));
    p.P_b_ac = P_set(m, b, mul(a, c));
    p.P_c_ab = P_set(m, c, mul(a, b));
    p.G_ab = G_set(m, a, b);
    p.G_ac = G_set(m, a, c);
    p.G_bc = G_set(m, b, c);
    std::vector<std::uint64_t> odd_m2;
    if (m > 3)
        for (auto q : nt::prime_divisors(static_cast<std::uint64_t>(m - 2)))
            if (q != 2) odd_m2.push_back(q);
    p.P_m2 = prod(odd_m2);
    auto ab = merged({&p.P_a_bc, &p.P_b_ac});
    p.P_ab = prod(ab);
    std::vector<std::uint64_t> ab_prime;
    for (auto q : ab)
        if ((m - 4) % static_cast<i128>(q) == 0) ab_prime.push_back(q);
    p.P_ab_prime = prod(ab_prime);
    p.P_c = prod(p.P_c_ab);
    p.P_abc = prod(p.P_all());
    return p;
}

const char* rule_name(Rule r)
{
    switch (r) {
    case Rule::FastPathI: return "FastPath-I";
    case Rule::FastPathII: return "FastPath-II";
    case Rule::FastPathIII: return "FastPath-III";
    case Rule::FastPathIV: return "FastPath-IV";
    case Rule::HenselLift: return "HenselLift";
    case Rule::ExhaustiveResidue: return "ExhaustiveResidue";
    }
    return "?";
}

Rule rule_from_name(const std::string& s)
{
    for (Rule r : {Rule::FastPathI, Rule::FastPathII, Rule::FastPathIII, Rule::FastPathIV, Rule::HenselLift,
                   Rule::ExhaustiveResidue})
        if (s == rule_name(r)) return r;
    throw DomainError("unknown rule name: " + s);
}

bool check_certificate(i128 m, std::span<const i128> coeffs, i128 N, std::uint64_t p, const HenselCertificate& cert)
{
    if (cert.residues.size() != coeffs.size() || cert.index >= coeffs.size()) return false;
    const i128 M = ppow(p, 2 * cert.t + 1, i128(1) << 62);
    if (M == 0) return false;
    const i128 alpha = mod(2 * (m - 2), M), beta = mod(m - 4, M);
    i128 F = mod(-N, M), y_i = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        i128 y = mod(mm(alpha, mod(cert.residues[j], M), M) - beta, M);
        if (j == cert.index) y_i = y;
        F = mod(F + mm(mod(coeffs[j], M), mm(y, y, M), M), M);
    }
    if (F != 0) return false;
    i128 deriv = mm(mm(mod(2 * coeffs[cert.index], M), alpha, M), y_i, M);
    const i128 pt = ppow(p, cert.t, M), pt1 = ppow(p, cert.t + 1, M);
    return deriv % pt == 0 && deriv % pt1 != 0;
}

// Values v_j(x) mod P for three coordinates, with one representative x per
// value, plus the sumsets S0+S1 and S0+S1+S2.
struct Engine::Tri {
    std::uint64_t P = 0;
    std::array<std::vector<std::int32_t>, 3> inv;
    Bitset T01, T;

    static Bitset cyclic_sum(const Bitset& A, const std::vector<std::int32_t>& inv_b, std::uint64_t P)
    {
        Bitset wide(2 * P), base(2 * P);
        for (std::size_t i = A.find_next(0); i < A.size(); i = A.find_next(i + 1)) base.set(i);
        for (std::uint64_t v = 0; v < P; ++v)
            if (inv_b[v] >= 0) wide.or_shifted(base, v);
        Bitset out(P);
        for (std::size_t i = wide.find_next(0); i < wide.size(); i = wide.find_next(i + 1)) out.set(i % P);
        return out;
    }

    template <class F>
    void tabulate(std::uint64_t modulus, F value)
    {
        P = modulus;
        for (unsigned j = 0; j < 3; ++j) {
            inv[j].assign(P, -1);
            for (std::uint64_t x = 0; x < P; ++x) {
                auto v = value(j, x);
                if (v && inv[j][*v] < 0) inv[j][*v] = static_cast<std::int32_t>(x);
            }
        }
    }

    // Direct cyclic sumsets; used when P is small.
    template <class F>
    void build(std::uint64_t modulus, F value)
    {
        tabulate(modulus, value);
        Bitset S0(P);
        for (std::uint64_t v = 0; v < P; ++v)
            if (inv[0][v] >= 0) S0.set(v);
        T01 = cyclic_sum(S0, inv[1], P);
        T = cyclic_sum(T01, inv[2], P);
    }

    // Every value set is stable under multiplication by unit squares, so the
    // sumsets are unions of orbits; one membership test per orbit suffices.
    template <class F>
    void build_orbits(std::uint64_t modulus, std::uint64_t p, F value)
    {
        tabulate(modulus, value);
        const unsigned E = static_cast<unsigned>(val(static_cast<i128>(P), p));
        std::vector<std::uint8_t> is_sq(p, 0);
        for (std::uint64_t x = 1; x < p; ++x) is_sq[x * x % p] = 1;
        std::vector<std::uint32_t> orbit(P, 0);
        for (std::uint64_t r = 1; r < P; ++r) {
            unsigned v = 0;
            std::uint64_t u = r;
            while (u % p == 0) {
                u /= p;
                ++v;
            }
            std::uint32_t cls;
            if (p == 2) {
                unsigned e = std::min(3u, E - v);
                cls = static_cast<std::uint32_t>(u & ((1u << e) - 1));
            } else {
                cls = is_sq[u % p] ? 0 : 1;
            }
            orbit[r] = 1 + v * 8 + cls;
        }
        auto sum_with = [&](const std::vector<std::int32_t>* left_inv, const Bitset* left_set,
                            const std::vector<std::int32_t>& right) {
            std::vector<std::uint64_t> rvals;
            for (std::uint64_t v = 0; v < P; ++v)
                if (right[v] >= 0) rvals.push_back(v);
            std::vector<int> member(8 * E + 16, -1);
            Bitset out(P);
            for (std::uint64_t r = 0; r < P; ++r) {
                int& mb = member[orbit[r]];
                if (mb < 0) {
                    mb = 0;
                    for (auto v : rvals) {
                        std::uint64_t rest = (r + P - v) % P;
                        if (left_inv ? (*left_inv)[rest] >= 0 : left_set->test(rest)) {
                            mb = 1;
                            break;
                        }
                    }
                }
                if (mb) out.set(r);
            }
            return out;
        };
        T01 = sum_with(&inv[0], nullptr, inv[1]);
        T = sum_with(nullptr, &T01, inv[2]);
    }

    std::array<i128, 3> witness(std::uint64_t r) const
    {
        for (std::uint64_t v2 = 0; v2 < P; ++v2) {
            if (inv[2][v2] < 0) continue;
            std::uint64_t rest = (r + P - v2) % P;
            if (!T01.test(rest)) continue;
            for (std::uint64_t v0 = 0; v0 < P; ++v0) {
                if (inv[0][v0] < 0) continue;
                std::uint64_t v1 = (rest + P - v0) % P;
                if (inv[1][v1] >= 0) return {inv[0][v0], inv[1][v1], inv[2][v2]};
            }
        }
        throw InvariantViolation("local engine: residue marked reachable without a witness");
    }
};

struct Engine::Tables {
    std::uint64_t p = 0;
    unsigned k = 0; // ord_p 2(m-2)
    bool ball = false;
    // ball case
    unsigned t = 0, index = 0;
    Tri tri;
    // homogeneous case, one table per coordinate forced to be a unit
    std::array<unsigned, 3> s{};
    std::array<Tri, 3> prim;
    std::array<bool, 3> built{};
};

const Engine::Tri& Engine::primitive_table(Tables& tb, unsigned i)
{
    Tri& tri = tb.prim[i];
    if (tb.built[i]) return tri;
    const std::uint64_t p = tb.p;
    const i128 P = ppow(p, 2 * tb.s[i] + 1 + extra_, static_cast<i128>(kMaxResidueModulus));
    if (P == 0) throw ResourceError("local engine: residue ring too large");
    const std::uint64_t Pu = static_cast<std::uint64_t>(P);
    std::array<std::uint64_t, 3> cs{};
    for (unsigned jj = 0; jj < 3; ++jj) cs[jj] = static_cast<std::uint64_t>(mod(coeffs_[jj], P));
    std::vector<std::uint64_t> sq(Pu);
    for (std::uint64_t z = 0; z < Pu; ++z) sq[z] = z * z % Pu;
    tri.build_orbits(Pu, p, [&](unsigned jj, std::uint64_t z) -> std::optional<std::uint64_t> {
        if (jj == i && z % p == 0) return std::nullopt;
        return cs[jj] * sq[z] % Pu;
    });
    tb.built[i] = true;
    return tri;
}

Engine::Engine(i128 m, std::vector<i128> coeffs, unsigned extra_precision)
    : m_(m), coeffs_(std::move(coeffs)), extra_(extra_precision)
{
    require(m_ >= 3, "local engine: m must be at least 3");
    require(coeffs_.size() == 3, "local engine: ternary forms only");
    for (i128 a : coeffs_) require(a >= 1, "local engine: coefficients must be positive");
}

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

Engine::Tables& Engine::tables(std::uint64_t p)
{
    auto it = cache_.find(p);
    if (it != cache_.end()) return *it->second;
    auto tb = std::make_unique<Tables>();
    tb->p = p;
    const i128 alpha = 2 * (m_ - 2), beta = m_ - 4;
    tb->k = val(alpha, p);
    const unsigned j = val(beta, p);
    tb->ball = j < tb->k;
    const unsigned v2 = p == 2 ? 1 : 0;
    const i128 cap = static_cast<i128>(kMaxResidueModulus);
    if (tb->ball) {
        tb->t = kInf;
        for (unsigned i = 0; i < 3; ++i) {
            unsigned ti = v2 + val(coeffs_[i], p) + tb->k + j;
            if (ti < tb->t) {
                tb->t = ti;
                tb->index = i;
            }
        }
        const i128 P = ppow(p, 2 * tb->t + 1 + extra_, cap);
        if (P == 0) throw ResourceError("local engine: residue ring too large");
        const std::uint64_t Pu = static_cast<std::uint64_t>(P);
        const std::uint64_t A = static_cast<std::uint64_t>(mod(alpha, P)), B = static_cast<std::uint64_t>(mod(beta, P));
        std::array<std::uint64_t, 3> cs{};
        for (unsigned jj = 0; jj < 3; ++jj) cs[jj] = static_cast<std::uint64_t>(mod(coeffs_[jj], P));
        tb->tri.build(Pu, [&](unsigned jj, std::uint64_t x) -> std::optional<std::uint64_t> {
            std::uint64_t y = (A * x % Pu + Pu - B) % Pu;
            return cs[jj] * (y * y % Pu) % Pu;
        });
    } else {
        for (unsigned i = 0; i < 3; ++i) tb->s[i] = v2 + val(coeffs_[i], p);
    }
    return *cache_.emplace(p, std::move(tb)).first->second;
}

LocalDecision Engine::decide(i128 N, std::uint64_t p, bool with_certificate)
{
    require(N >= 1, "padic_solvable: N must be positive");
    require(nt::is_prime(p), "padic_solvable: p must be prime");
    Tables& tb = tables(p);
    LocalDecision out;
    if (tb.ball) {
        const std::uint64_t r = static_cast<std::uint64_t>(mod(N, static_cast<i128>(tb.tri.P)));
        out.represented = tb.tri.T.test(r);
        out.rule = out.represented ? Rule::HenselLift : Rule::ExhaustiveResidue;
        if (out.represented && with_certificate) {
            auto w = tb.tri.witness(r);
            out.certificate = HenselCertificate{{w[0], w[1], w[2]}, tb.t, tb.index};
        }
        return out;
    }

    out.rule = Rule::ExhaustiveResidue;
    if (val(N, p) < 2 * tb.k) return out;
    const i128 pi = static_cast<i128>(p);
    i128 Np = N / ppow(p, 2 * tb.k, std::numeric_limits<i128>::max());
    unsigned r = 0;
    while (true) {
        for (unsigned i = 0; i < 3; ++i) {
            const Tri& tri = primitive_table(tb, i);
            const std::uint64_t res = static_cast<std::uint64_t>(mod(Np, static_cast<i128>(tri.P)));
            if (!tri.T.test(res)) continue;
            out.represented = true;
            out.rule = Rule::HenselLift;
            if (!with_certificate) return out;
            // Lift the unit coordinate until Q(z) = Np mod p^(2s+2k+1), then
            // map y = p^(k+r) z back to x = (y + (m-4)) / (2(m-2)).
            const unsigned s = tb.s[i], k = tb.k;
            const unsigned prec_z = 2 * s + 2 * k + 1;
            const unsigned t = s + 2 * k + r;
            const i128 cap = i128(1) << 62;
            const i128 Mz = ppow(p, prec_z + s, cap), Pz = ppow(p, prec_z, cap), ps = ppow(p, s, cap);
            const i128 Mx = ppow(p, 2 * t + 1, cap);
            if (Mz == 0 || Mx == 0) return out;
            auto w = tri.witness(res);
            std::array<i128, 3> z{w[0], w[1], w[2]};
            auto g_of = [&] {
                i128 g = mod(-Np, Mz);
                for (unsigned jj = 0; jj < 3; ++jj) g = mod(g + mm(mod(coeffs_[jj], Mz), mm(z[jj], z[jj], Mz), Mz), Mz);
                return g;
            };
            for (int iter = 0; iter < 256; ++iter) {
                i128 g = g_of();
                if (g % Pz == 0) break;
                ensure(g % ps == 0, "local engine: Newton step lost precision");
                i128 gp = mm(mod(2 * coeffs_[i], Mz), z[i], Mz);
                i128 u = mod(gp / ps, Pz);
                i128 step = mm(mod(g / ps, Pz), nt::mod_inverse(u, Pz), Pz);
                z[i] = mod(z[i] - step, Mz);
            }
            ensure(g_of() % Pz == 0, "local engine: Newton lift did not converge");
            const i128 alpha = 2 * (m_ - 2);
            const i128 pk = ppow(p, k, std::numeric_limits<i128>::max());
            const i128 alpha_unit = mod(alpha / pk, Mx);
            const i128 inv = nt::mod_inverse(alpha_unit, Mx);
            const i128 beta_k = mod((m_ - 4) / pk, Mx);
            const i128 pr = ppow(p, r, cap);
            if (pr == 0) return out;
            HenselCertificate cert{{}, t, i};
            for (unsigned jj = 0; jj < 3; ++jj) {
                i128 xj = mod(mm(mod(pr, Mx), mod(z[jj], Mx), Mx) + beta_k, Mx);
                cert.residues.push_back(mm(xj, inv, Mx));
            }
            out.certificate = std::move(cert);
            return out;
        }
        if (Np % (pi * pi) != 0) return out;
        Np /= pi * pi;
        ++r;
    }
}

LocalDecision padic_solvable(i128 m, std::span<const i128> coeffs, i128 N, std::uint64_t p, unsigned extra_precision)
{
    Engine e(m, std::vector<i128>(coeffs.begin(), coeffs.end()), extra_precision);
    return e.decide(N, p, true);
}

std::optional<LocalDecision> fast_path(i128 m, std::array<i128, 3> abc, i128 n, std::uint64_t p,
                                       const PrimePartition& part)
{
    const i128 pi = static_cast<i128>(p);
    const auto [a, b, c] = abc;
    const i128 N = add(mul(mul(8, m - 2), n), mul(mul(m - 4, m - 4), add(add(a, b), c)));
    auto yes = [](Rule r) { return LocalDecision{true, r, std::nullopt}; };
    const bool primitive = gcd(gcd(a, b), c) == 1;
    if (primitive) {
        if (p != 2 && (m - 2) % pi == 0) return yes(Rule::FastPathI);
        if (p == 2 && part.delta == 0) return yes(Rule::FastPathI);
        if (p == 2 && part.delta == 1) {
            const i128 f = 2 / static_cast<i128>(nt::ord_p(m, 2));
            if (mod(n - f * (a + b + c), 8) == 0) return yes(Rule::FastPathI);
        }
    }
    if (p == 2 || (m - 2) % pi == 0) return std::nullopt;
    const int divisible = (a % pi == 0) + (b % pi == 0) + (c % pi == 0);
    if (divisible == 0) return yes(Rule::FastPathII);
    if (divisible != 1) return std::nullopt;
    // Rotate so that p | z.
    i128 x = a, y = b;
    if (a % pi == 0) x = c;
    else if (b % pi == 0) y = c;
    if (N % pi != 0) return yes(Rule::FastPathIII);
    if (nt::kronecker(mul(-4, mul(x, y)), pi) == 1) return yes(Rule::FastPathIV);
    return std::nullopt;
}

LocalChecker::LocalChecker(i128 m, std::array<i128, 3> abc, Mode mode, unsigned extra_precision)
    : m_(m), abc_(abc), part_(local::partition(m, abc[0], abc[1], abc[2])),
      engine_(m, {abc[0], abc[1], abc[2]}, extra_precision)
{
    const bool primitive = gcd(gcd(abc[0], abc[1]), abc[2]) == 1;
    narrowed_ = mode == Mode::automatic && primitive && part_.G_all().empty();
    if (narrowed_) {
        primes_ = part_.P_all();
        if (part_.delta == 1) primes_.push_back(2);
    } else {
        i128 all = mul(mul(2 * (m - 2), abc[0]), mul(abc[1], abc[2]));
        primes_ = nt::prime_divisors(static_cast<std::uint64_t>(all));
    }
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

i128 LocalChecker::target_N_of(i128 n) const
{
    return add(mul(mul(8, m_ - 2), n), mul(mul(m_ - 4, m_ - 4), add(add(abc_[0], abc_[1]), abc_[2])));
}

LocalVerdict LocalChecker::check(i128 n, bool with_certificates)
{
    require(n >= 1, "locally_represented: n must be positive");
    LocalVerdict v;
    v.narrowed = narrowed_;
    const i128 N = target_N_of(n);
    for (auto p : primes_) {
        auto fp = fast_path(m_, abc_, n, p, part_);
        LocalDecision d = fp ? *fp : engine_.decide(N, p, with_certificates);
        v.verdict = v.verdict && d.represented;
        v.per_prime.emplace(p, std::move(d));
    }
    return v;
}

bool LocalChecker::represented(i128 n)
{
    const i128 N = target_N_of(n);
    for (auto p : primes_) {
        if (fast_path(m_, abc_, n, p, part_)) continue;
        if (!engine_.decide(N, p, false).represented) return false;
    }
    return true;
}

LocalVerdict locally_represented(i128 m, std::array<i128, 3> abc, i128 n, Mode mode)
{
    LocalChecker checker(m, abc, mode);
    return checker.check(n);
}

} // namespace polyreg::local
