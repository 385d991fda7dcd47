#include "polyreg/regularity.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "polyreg/errors.hpp"
#include "polyreg/local.hpp"
#include "polyreg/numthy.hpp"

namespace polyreg::regularity {

namespace nt = polyreg::numthy;
using enclosure::to_big;

namespace {

BigInt big(i128 v) { return numerator(to_big(v)); }

bool has_prime(const std::vector<std::uint64_t>& v, std::uint64_t q) { return std::binary_search(v.begin(), v.end(), q); }

i128 floor_two_over_ord2(i128 m)
{
    unsigned e = nt::ord_p(m, 2);
    return e == 0 ? 0 : 2 / e; // only read when ord_2(m) >= 2
}

// (-4ab/q) for odd primes q, from a table of one period when it is small.
class InertTest {
public:
    explicit InertTest(i128 ab) : D_(mul(-4, ab))
    {
        if (4 * ab <= (i128(1) << 20)) {
            period_ = static_cast<std::uint64_t>(4 * ab);
            table_.resize(period_);
            for (std::uint64_t r = 0; r < period_; ++r)
                table_[r] = static_cast<std::int8_t>(r % 2 == 1 ? nt::kronecker(D_, static_cast<i128>(r)) : 0);
        }
    }
    // The table is valid on odd r only; kronecker(D, .) with D = 0 mod 4 has period |D| there.
    bool inert(std::uint64_t q) const
    {
        if (q == 2) return false;
        if (period_ != 0) return table_[q % period_] == -1;
        return nt::kronecker(D_, static_cast<i128>(q)) == -1;
    }

private:
    i128 D_;
    std::uint64_t period_ = 0;
    std::vector<std::int8_t> table_;
};

PowerProduct q0_bound(const local::PrimePartition& part)
{
    return PowerProduct()
        .times(4, 2, 3)
        .times(kC0)
        .times(to_big(mul(part.P_m2, part.P_c)), 1, 6)
        .times(to_big(mul(part.a, part.b)), 2, 3);
}

PowerProduct C1_pp() { return PowerProduct().times(2, 9, 5).times(kC0, 6, 5); }
PowerProduct C3_pp() { return PowerProduct().times(4, 26, 15).times(kC0, 13, 5).times(C1_pp()); }
PowerProduct C4_pp() { return PowerProduct().times(24, 12, 5).times(kC2, 112, 15).times(C3_pp(), 2); }

// Which side of the threshold q lies on; integer bounds around the
// enclosure settle almost all cases.
struct ThresholdTest {
    const InertSequence& seq;
    std::uint64_t lo, hi; // lo <= threshold <= hi
    explicit ThresholdTest(const InertSequence& s)
        : seq(s),
          lo(static_cast<std::uint64_t>(numerator(s.threshold_value.lo) / denominator(s.threshold_value.lo))),
          hi(static_cast<std::uint64_t>(numerator(s.threshold_value.hi) / denominator(s.threshold_value.hi)) + 1)
    {
    }
    bool below(std::uint64_t q) const
    {
        if (q < lo) return true;
        if (q > hi) return false;
        return PowerProduct(BigRational(q)) < seq.threshold;
    }
};

struct SeqState {
    InertTest test;
    std::uint64_t last = 0; // last prime examined
};

// Append q_i while fewer than `count` are known or the last prime examined is below `until`.
void grow(InertSequence& seq, std::size_t count, SeqState& st, std::uint64_t until = 0)
{
    const std::uint64_t m2 = static_cast<std::uint64_t>(seq.m - 2);
    std::uint64_t limit = std::max<std::uint64_t>({st.last * 2, until + 1024, 1 << 16});
    while (seq.qs.size() < count || st.last < until) {
        auto table = nt::prime_table(limit);
        auto it = std::upper_bound(table->begin(), table->end(), static_cast<std::uint32_t>(st.last));
        for (; it != table->end() && (seq.qs.size() < count || st.last < until); ++it) {
            std::uint64_t q = *it;
            st.last = q;
            if (st.test.inert(q) && q != seq.q0 && m2 % q != 0) seq.qs.push_back(q);
        }
        limit = std::max<std::uint64_t>(limit, st.last) * 2;
    }
}

} // namespace

KkoCount kkO_count(i128 u, i128 ell, i128 n, const std::vector<std::uint64_t>& T)
{
    require(n >= 1, "kkO_count: n must be positive");
    std::vector<std::uint64_t> primes(T);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes) require(nt::is_prime(p), "kkO_count: T must consist of primes");
    const i128 P = nt::product(primes);
    require(gcd(ell, P) == 1, "kkO_count: gcd(ell, prod T) must be 1");
    KkoCount out;
    for (i128 j = 0; j < n; ++j)
        if (gcd(add(mul(ell, j), u), P) == 1) ++out.count;
    i128 phi = 1;
    for (auto p : primes) phi = mul(phi, static_cast<i128>(p) - 1);
    out.lower = Rational(mul(n, phi), P) - Rational(ipow(2, static_cast<unsigned>(primes.size()))) + 1;
    ensure(Rational(out.count) >= out.lower, "kkO_count: count below the counting bound");
    return out;
}

Rational K_value(i128 m, i128 a, i128 b, i128 c)
{
    auto part = local::partition(m, a, b, c);
    return Rational(24) * Rational(part.P_ab) * nt::rho(static_cast<std::uint64_t>(part.P_abc));
}

InertSequence inert_sequence(i128 m, i128 a, i128 b, i128 c, std::size_t upto)
{
    require(gcd(gcd(a, b), c) == 1, "inert_sequence: gcd(a,b,c) must be 1");
    auto part = local::partition(m, a, b, c);
    InertSequence seq;
    seq.m = m;
    seq.a = a;
    seq.b = b;
    seq.c = c;
    const i128 ab = mul(a, b);
    InertTest test(ab);

    for (std::uint64_t q = 3;; q = nt::next_prime(q))
        if (test.inert(q) && (m - 2) % static_cast<i128>(q) != 0 && !has_prime(part.P_c_ab, q)) {
            seq.q0 = q;
            break;
        }
    ensure(PowerProduct(seq.q0) < q0_bound(part), "inert_sequence: q0 exceeds its proven bound");

    seq.K = Rational(24) * Rational(part.P_ab) * nt::rho(static_cast<std::uint64_t>(part.P_abc));
    const i128 q0 = static_cast<i128>(seq.q0);
    seq.threshold = C1_pp()
                        .times(to_big(part.P_m2), 1, 6)
                        .times(to_big(Rational(mul(mul(q0, q0), q0)) * seq.K), 1, 5)
                        .times(to_big(ab), 4, 5);
    seq.threshold_value = seq.threshold.enclose(96);

    SeqState st{test};
    const ThresholdTest th(seq);
    grow(seq, 1, st, th.hi + 1);
    seq.i0 = static_cast<std::size_t>(
        std::partition_point(seq.qs.begin(), seq.qs.end(), [&](std::uint64_t q) { return th.below(q); }) -
        seq.qs.begin());
    grow(seq, std::max(upto, seq.i0 + 1), st);
    return seq;
}

void extend(InertSequence& seq, std::size_t count)
{
    if (seq.qs.size() >= count) return;
    SeqState st{InertTest(mul(seq.a, seq.b)), seq.qs.empty() ? 0 : seq.qs.back()};
    grow(seq, count, st);
}

std::vector<bool> verify_eq34(InertSequence& seq, const Rational& K, std::size_t i_from, std::size_t i_to)
{
    require(seq.m >= 4, "verify_eq34: the inequality is stated for m >= 4");
    require(i_from >= seq.i0, "verify_eq34: i_from must be at least i0");
    require(i_from <= i_to, "verify_eq34: empty index range");
    extend(seq, i_to + 1);

    const BigInt q0 = seq.q0;
    const BigInt Kn = big(K.num()), Kd = big(K.den());
    const BigInt m3 = big(seq.m - 3);
    // The product only has to be known exactly until it passes the largest
    // left side; after that every comparison is true.
    const BigInt cap = Kn * q0 * q0 * BigInt(seq.q(i_to + 1)) + 1;
    BigInt prod = 1; // q_1 ... q_done, exact until it reaches cap
    std::size_t done = 0;
    bool saturated = false;
    std::vector<bool> out;
    for (std::size_t i = i_from; i <= i_to; ++i) {
        for (; done < i; ++done)
            if (!saturated) {
                prod *= seq.q(done + 1);
                saturated = prod >= cap;
            }
        const BigInt lhs = Kn * q0 * q0 * BigInt(seq.q(i + 1));
        out.push_back(saturated || lhs < m3 * prod * Kd);
    }
    return out;
}

WitnessIntegers construct_N0_pair(i128 m, i128 a, i128 b, i128 c)
{
    require(gcd(gcd(a, b), c) == 1, "construct_N0_pair: gcd(a,b,c) must be 1");
    auto part = local::partition(m, a, b, c);
    require(part.G_all().empty(), "construct_N0_pair: G_m(a,b,c) must be empty");

    WitnessIntegers w;
    w.kind = WitnessIntegers::Kind::N0_pair;
    w.m = m;
    w.a = a;
    w.b = b;
    w.c = c;
    const i128 abc_sum = a + b + c;
    const i128 eight_d = part.delta ? 8 : 1;
    const i128 residue8 = mod(floor_two_over_ord2(m) * abc_sum, 8);
    w.w0 = part.delta ? (residue8 == 0 ? 8 : residue8) : 1;
    const i128 sq4 = mul(m - 4, m - 4);
    w.u = add(mul(8 * (m - 2), w.w0), mul(sq4, abc_sum));
    const i128 step = mul(8 * eight_d, m - 2);
    const i128 P = part.P_abc;
    const auto prof = nt::profile(static_cast<std::uint64_t>(P));

    const i128 v_lim = prof.rho.floor();
    std::optional<i128> v0;
    for (i128 v = 0; v < v_lim && !v0; ++v)
        if (gcd(add(mul(step, v), w.u), P) == 1) v0 = v;
    ensure(v0.has_value(), "construct_N0_pair: no admissible v0 below floor(rho(P_abc))");
    w.v = *v0;
    w.N = add(mul(step, w.v), w.u);
    w.n = add(mul(eight_d, w.v), w.w0);

    const Rational bar_lim = Rational(11 * eight_d) * Rational(P) * prof.rho / Rational(static_cast<i128>(prof.phi));
    const polyforms::PolygonalForm unary(m, {a});
    for (i128 v = 0; v < bar_lim.floor() && !w.v_bar; ++v) {
        if (gcd(add(mul(step, v), w.u), P) != 1) continue;
        if (polyforms::represents(unary, add(mul(eight_d, v), w.w0)).xyz) continue;
        w.v_bar = v;
    }
    ensure(w.v_bar.has_value(), "construct_N0_pair: no admissible v0bar below the counting bound");
    w.N_bar = add(mul(step, *w.v_bar), w.u);
    w.n_bar = add(mul(eight_d, *w.v_bar), w.w0);

    const i128 sum_abc[3] = {a, b, c};
    for (auto [N, n] : {std::pair{w.N, w.n}, std::pair{*w.N_bar, *w.n_bar}}) {
        ensure(N == polyforms::target_N(m, sum_abc, n), "construct_N0_pair: N != 8(m-2)n + (m-4)^2(a+b+c)");
        ensure(gcd(N, P) == 1, "construct_N0_pair: gcd(N, P_abc) != 1");
        if (part.delta) ensure(mod(n - residue8, 8) == 0, "construct_N0_pair: mod 8 condition fails");
    }
    ensure(Rational(w.n) <= Rational(8) * prof.rho, "construct_N0_pair: n0 > 8 rho(P_abc)");
    local::LocalChecker checker(m, {a, b, c});
    ensure(checker.represented(w.n), "construct_N0_pair: N0 not locally represented");
    ensure(checker.represented(*w.n_bar), "construct_N0_pair: N0bar not locally represented");

    w.certificates = {
        "gcd(N0, P_abc) = 1",
        "gcd(N0bar, P_abc) = 1",
        "n0 = " + to_string(w.n) + " <= 8 rho(P_abc) = " + (Rational(8) * prof.rho).str(),
        to_string(w.n_bar.value()) + " is not a * p_m(x)",
        "N0 and N0bar locally represented",
    };
    if (part.delta) w.certificates.push_back("n0 = n0bar = " + to_string(residue8) + " (mod 8)");
    return w;
}

WitnessIntegers construct_Ni(i128 m, i128 a, i128 b, i128 c, InertSequence& seq, std::size_t i)
{
    require(gcd(gcd(a, b), c) == 1, "construct_Ni: gcd(a,b,c) must be 1");
    require(i >= 1, "construct_Ni: i must be at least 1");
    require(seq.m == m && seq.a == a && seq.b == b && seq.c == c, "construct_Ni: sequence belongs to another form");
    extend(seq, i);
    auto part = local::partition(m, a, b, c);

    WitnessIntegers w;
    w.kind = WitnessIntegers::Kind::Ni;
    w.m = m;
    w.a = a;
    w.b = b;
    w.c = c;
    w.i = i;
    w.q = seq.q(i);
    const i128 q = static_cast<i128>(w.q), q0 = static_cast<i128>(seq.q0), q0sq = mul(q0, q0);
    w.s = part.P_ab / part.P_ab_prime;
    const i128 sq = mul(w.s, q);
    const i128 eight_d = part.delta ? 8 : 1;
    const i128 m8 = mul(8, m - 2);
    const i128 base = mul(mul(m - 4, m - 4), a + b);
    const i128 fl = floor_two_over_ord2(m);

    std::vector<i128> res, mods;
    auto add_congruence = [&](i128 target, i128 modulus) {
        res.push_back(mod(mul(mod(target, modulus), nt::mod_inverse(mod(sq, modulus), modulus)), modulus));
        mods.push_back(modulus);
    };
    add_congruence(add(mul(m8, c), q0), q0sq);
    add_congruence(base, m8);
    if (part.delta) add_congruence(add(mul(mul(m8, fl), a + b + c), base), 128);
    nt::CrtSolution crt;
    try {
        crt = nt::crt(res, mods);
    } catch (const DomainError& e) {
        throw InvariantViolation(std::string("construct_Ni: congruences inconsistent: ") + e.what());
    }

    const i128 L = mul(mul(8 * eight_d, m - 2), q0sq);
    ensure(L % crt.modulus == 0, "construct_Ni: CRT modulus does not divide the step");
    const i128 X = base / sq; // floor((m-4)^2(a+b)/(sq))
    w.u = add(X + 1, mod(crt.solution - (X + 1), crt.modulus));
    ensure(Rational(w.u) <= Rational(L) + Rational(base, sq), "construct_Ni: u_i outside its window");

    const i128 T = mul(mul(q, part.P_c), part.P_ab_prime);
    const i128 v_lim = nt::rho(static_cast<std::uint64_t>(T)).floor();
    std::optional<i128> vi;
    for (i128 v = 0; v < v_lim && !vi; ++v)
        if (gcd(add(mul(L, v), w.u), T) == 1) vi = v;
    ensure(vi.has_value(), "construct_Ni: no admissible v_i below floor(rho)");
    w.v = *vi;
    const i128 wi = add(mul(L, w.v), w.u);
    w.N = mul(sq, wi);
    ensure(w.N > base && (w.N - base) % m8 == 0, "construct_Ni: N_i not of the form 8(m-2)n + (m-4)^2(a+b)");
    w.n = (w.N - base) / m8;

    ensure(nt::ord_p(w.N, q) == 1, "construct_Ni: ord_q N_i != 1");
    ensure(mod(w.N - base, m8) == 0, "construct_Ni: N_i != (m-4)^2(a+b) mod 8(m-2)");
    ensure(mod(w.N - add(mul(m8, c), q0), q0sq) == 0, "construct_Ni: N_i != 8(m-2)c + q0 mod q0^2");
    ensure(gcd(w.N / q, part.P_c) == 1, "construct_Ni: gcd(N_i/q_i, P_c) != 1");
    ensure(w.n > 0, "construct_Ni: n_i not positive");
    ensure(Rational(w.n) <= seq.K * Rational(mul(q0sq, q)), "construct_Ni: n_i > K q0^2 q_i");
    if (part.delta) ensure(mod(w.n - fl * (a + b + c), 8) == 0, "construct_Ni: mod 8 condition fails");
    const i128 shifted = w.N - mul(m8, c);
    if (shifted > 0) ensure(nt::ord_p(shifted, q0) == 1, "construct_Ni: ord_q0(N_i - 8(m-2)c) != 1");
    ensure(binary_nonrepresentation_check(m, a, b, w.N, w.q), "construct_Ni: binary certificate failed");

    w.certificates = {
        "ord_q(N) = 1",
        "N = (m-4)^2(a+b) mod 8(m-2)",
        "N = 8(m-2)c + q0 mod q0^2",
        "gcd(N/q, P_c) = 1",
        "n <= K q0^2 q",
        "N not represented by phi_{m,(a,b)}: (-4ab/q) = -1, ord_q N = 1",
    };
    if (part.delta) w.certificates.push_back("n = " + to_string(mod(fl * (a + b + c), 8)) + " (mod 8)");
    if (shifted > 0) w.certificates.push_back("ord_q0(N - 8(m-2)c) = 1");
    return w;
}

bool binary_nonrepresentation_check(i128 m, i128 a, i128 b, i128 N, std::uint64_t q)
{
    require(m >= 3 && a >= 1 && b >= 1, "binary_nonrepresentation_check: bad form");
    require(N >= 1, "binary_nonrepresentation_check: N must be positive");
    require(nt::is_prime(q), "binary_nonrepresentation_check: q must be prime");
    require(nt::kronecker(mul(-4, mul(a, b)), static_cast<i128>(q)) == -1,
            "binary_nonrepresentation_check: (-4ab/q) must be -1");
    require(nt::ord_p(N, static_cast<i128>(q)) == 1, "binary_nonrepresentation_check: ord_q N must be 1");
    return true;
}

bool phi_binary_represents(i128 m, i128 a, i128 b, i128 N)
{
    require(m >= 3 && a >= 1 && b >= 1, "phi_binary_represents: bad form");
    if (N < 0) return false;
    const i128 alpha = 2 * (m - 2), beta = m - 4;
    // y = alpha x - beta ranges over y = -beta (mod alpha); |y| then lies in {beta, -beta} mod alpha.
    const i128 r1 = mod(beta, alpha), r2 = mod(-beta, alpha);
    auto ok = [&](i128 t) { return mod(t, alpha) == r1 || mod(t, alpha) == r2; };
    for (i128 t = 0; mul(a, mul(t, t)) <= N; ++t) {
        if (!ok(t)) continue;
        const i128 rest = N - a * t * t;
        if (rest % b != 0) continue;
        const i128 s2 = rest / b, s = isqrt(s2);
        if (s * s == s2 && ok(s)) return true;
    }
    return false;
}

ExceptionReport exceptions(const polyforms::PolygonalForm& form, std::uint64_t N_max, std::uint64_t budget_bytes,
                           std::size_t limit)
{
    require(form.coeffs.size() == 3, "exceptions: ternary form expected");
    require(form.primitive(), "exceptions: form must be primitive");
    require(N_max >= 1, "exceptions: N_max must be positive");

    ExceptionReport rep;
    rep.form = form;
    rep.N_max = N_max;
    std::uint64_t scan = N_max;
    std::optional<Bitset> set;
    while (!set) {
        try {
            set = polyforms::represented_set(form, scan, budget_bytes);
        } catch (const ResourceError&) {
            rep.scan_complete = false;
            if (scan <= 1) return rep;
            scan /= 2;
        }
    }

    local::LocalChecker checker(form.m, {form.coeffs[0], form.coeffs[1], form.coeffs[2]});
    rep.scanned_to = scan;
    for (std::uint64_t n = set->find_next_clear(1); n <= scan; n = set->find_next_clear(n + 1)) {
        bool loc;
        try {
            loc = checker.represented(static_cast<i128>(n));
        } catch (const ResourceError&) {
            rep.scanned_to = n - 1;
            rep.scan_complete = false;
            break;
        }
        if (!loc) continue;
        ensure(!polyforms::represents(form, static_cast<i128>(n)).xyz, "exceptions: bitset and direct search disagree");
        rep.exceptions.push_back(n);
        if (limit != 0 && rep.exceptions.size() >= limit) {
            rep.truncated = true;
            rep.scanned_to = n;
            break;
        }
    }
    return rep;
}

BoundLedger bound_ledger(i128 m, i128 a, i128 b, i128 c)
{
    require(gcd(gcd(a, b), c) == 1, "bound_ledger: gcd(a,b,c) must be 1");
    auto part = local::partition(m, a, b, c);
    BoundLedger L;
    L.m = m;
    L.a = a;
    L.b = b;
    L.c = c;
    const unsigned bits = enclosure::kDefaultBits;
    L.C0 = Interval::point(kC0);
    L.C1 = C1_pp().enclose(bits);
    L.C2 = Interval::point(kC2);
    L.C3 = C3_pp().enclose(bits);
    L.C4 = C4_pp().enclose(bits);

    L.P_abc = part.P_abc;
    const auto prof = nt::profile(static_cast<std::uint64_t>(L.P_abc));
    const Rational phi(static_cast<i128>(prof.phi));
    L.rho_abc = prof.rho;
    L.K = Rational(24) * Rational(part.P_ab) * prof.rho;
    L.rhs_a = Rational(8) * prof.rho;
    L.rhs_b = Rational(64 * 11) * Rational(L.P_abc) * prof.rho / phi;
    L.rhs_ab = Rational(kC2) * Rational(L.P_abc) * prof.rho * prof.rho / phi;

    const BigRational ab = to_big(mul(a, b));
    PowerProduct rhs_c = C3_pp()
                             .times(to_big(part.P_m2), 3, 5)
                             .times(to_big(part.P_c), 1, 2)
                             .times(to_big(L.K), 6, 5)
                             .times(ab, 38, 15);
    PowerProduct rhs_final =
        C4_pp().times(to_big(prof.rho), 18).times(to_big(Rational(L.P_abc) / phi), 112, 15);
    L.rhs_c = rhs_c.enclose(bits);
    L.rhs_final = rhs_final.enclose(bits);

    L.a_ok = Rational(a) <= L.rhs_a;
    L.b_ok = Rational(b) <= L.rhs_b;
    L.abc_ok = Rational(mul(a, b)) < L.rhs_ab;
    if (m == 3) {
        L.c_ok = L.final_ok = true;
    } else {
        L.c_ok = PowerProduct(to_big(mul(m - 3, c))) <= rhs_c;
        L.final_ok = PowerProduct().times(to_big(m - 3), 2, 5).times(to_big(c)) < rhs_final;
    }
    return L;
}

const char* status_name(Status s)
{
    switch (s) {
    case Status::candidate_regular: return "candidate-regular";
    case Status::irregular: return "irregular";
    case Status::needs_descent: return "needs-descent";
    case Status::partial: return "partial";
    }
    return "?";
}

Status status_from_name(const std::string& s)
{
    for (Status v : {Status::candidate_regular, Status::irregular, Status::needs_descent, Status::partial})
        if (s == status_name(v)) return v;
    throw DomainError("unknown triple status: " + s);
}

std::vector<std::array<i128, 3>> SearchReport::candidates() const
{
    std::vector<std::array<i128, 3>> out;
    for (const auto& t : triples)
        if (t.status == Status::candidate_regular) out.push_back(t.abc);
    return out;
}

SearchReport search(i128 m, i128 c_max, std::uint64_t N_max, const SearchOptions& opts)
{
    require(m >= 3, "search: m must be at least 3");
    require(c_max >= 1, "search: c_max must be positive");
    require(N_max >= 1, "search: N_max must be positive");

    SearchReport rep;
    rep.m = m;
    rep.c_max = c_max;
    rep.N_max = N_max;
    std::vector<std::array<i128, 3>> todo;
    for (i128 a = 1; a <= c_max; ++a)
        for (i128 b = a; b <= c_max; ++b)
            for (i128 c = b; c <= c_max; ++c)
                if (gcd(gcd(a, b), c) == 1) todo.push_back({a, b, c});

    std::vector<TripleResult> results(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
            try {
                auto [a, b, c] = todo[k];
                TripleResult& r = results[k];
                r.abc = todo[k];
                auto part = local::partition(m, a, b, c);
                r.G = part.G_all();
                if (!r.G.empty()) {
                    r.status = Status::needs_descent;
                    continue;
                }
                auto ex = exceptions(polyforms::PolygonalForm(m, {a, b, c}), N_max, opts.budget_bytes,
                                     opts.exception_limit);
                r.exceptions = ex.exceptions;
                if (!ex.scan_complete)
                    r.status = Status::partial;
                else
                    r.status = ex.exceptions.empty() ? Status::candidate_regular : Status::irregular;
                r.ledger = bound_ledger(m, a, b, c);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
                next = todo.size();
            }
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(todo.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);

    for (auto& r : results) {
        rep.triples.push_back(std::move(r));
        if (rep.triples.back().status == Status::partial) {
            rep.complete = false;
            break;
        }
        rep.watermark = rep.triples.back().abc;
    }
    return rep;
}

bool DicksonCheck::all() const
{
    return std::all_of(holds.begin(), holds.end(), [](bool v) { return v; });
}

DicksonCheck dickson_check(i128 b, std::size_t count)
{
    require(b >= 1, "dickson_check: b must be positive");
    require(count >= 1, "dickson_check: count must be positive");
    DicksonCheck out;
    out.b = b;
    auto represented = [&](i128 p) {
        for (i128 y = 0; b * y * y <= p; ++y) {
            i128 r = p - b * y * y, x = isqrt(r);
            if (x * x == r) return true;
        }
        return false;
    };
    for (std::uint64_t p = 3; out.primes.size() < count; p = nt::next_prime(p))
        if (!represented(static_cast<i128>(p))) out.primes.push_back(p);
    while (out.i0 < out.primes.size() && static_cast<i128>(out.primes[out.i0]) < b) ++out.i0;

    // holds[i - i0] compares p_{i+1} with p_1 ... p_i (1-based; the empty product is 1)
    BigInt prod = 1;
    for (std::size_t i = 0; i < out.primes.size(); ++i) {
        if (i >= 1) prod *= out.primes[i - 1];
        if (i >= out.i0) out.holds.push_back(BigInt(out.primes[i]) < prod);
    }
    return out;
}

} // namespace polyreg::regularity
