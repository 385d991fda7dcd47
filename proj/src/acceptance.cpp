#include "polyreg/acceptance.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "polyreg/characters.hpp"
#include "polyreg/errors.hpp"
#include "polyreg/local.hpp"
#include "polyreg/numthy.hpp"
#include "polyreg/polyforms.hpp"
#include "polyreg/regularity.hpp"

namespace polyreg::acceptance {

namespace nt = polyreg::numthy;
namespace ch = polyreg::characters;
namespace rg = polyreg::regularity;
using enclosure::BigInt;
using enclosure::BigRational;

namespace {

struct CriterionInfo {
    const char* name;
    double limit; // seconds
};

constexpr std::array<CriterionInfo, kCount> kCriteria{{
    {"three-squares regularity", 30},
    {"triangular regularity", 30},
    {"Polya-Vinogradov explicit bound", 60},
    {"character-system lower bound", 120},
    {"inert-prime bound", 60},
    {"inert-prime product inequality", 60},
    {"witness constructors", 60},
    {"fast-path/engine agreement", 120},
    {"constants", 5},
    {"search stability", 600},
    {"Dickson inequality", 30},
}};

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& what)
    {
        if (ok) detail << what;
        ok = false;
    }
};

std::mt19937_64 rng_for(const Options& o, int id) { return std::mt19937_64(o.seed * 1000003 + static_cast<std::uint64_t>(id)); }

std::uint64_t uniform(std::mt19937_64& g, std::uint64_t lo, std::uint64_t hi)
{
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(g);
}

// n = 4^t (8k + 7), straight from the definition.
bool three_square_excluded(std::uint64_t n)
{
    while (n % 4 == 0) n /= 4;
    return n % 8 == 7;
}

void c1(const Options&, Outcome& out)
{
    auto rep = rg::exceptions(polyforms::PolygonalForm(4, {1, 1, 1}), 100000);
    if (!rep.scan_complete || !rep.exceptions.empty()) out.fail("exceptions found up to 1e5");
    local::LocalChecker checker(4, {1, 1, 1});
    std::size_t excluded = 0;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        const bool loc = checker.represented(static_cast<i128>(n));
        if (loc == three_square_excluded(n)) out.fail("local verdict differs from 4^t(8k+7) at n=" + std::to_string(n));
        excluded += !loc;
    }
    out.detail << "exceptions<=1e5: " << rep.exceptions.size() << ", excluded<=1e3: " << excluded;
}

void c2(const Options&, Outcome& out)
{
    auto rep = rg::exceptions(polyforms::PolygonalForm(3, {1, 1, 1}), 100000);
    if (!rep.scan_complete || !rep.exceptions.empty()) out.fail("exceptions found up to 1e5");
    out.detail << "exceptions<=1e5: " << rep.exceptions.size();
}

void c3(const Options&, Outcome& out)
{
    std::size_t chars = 0;
    double worst = 0;
    for (std::uint64_t k = 2; k <= 100; ++k)
        for (const auto& chi : ch::real_characters(k)) {
            ++chars;
            auto r = ch::verify_pv_all_ranges(chi, 10 * k);
            if (!r.ok) out.fail("bound exceeded for " + chi.name() + " mod " + std::to_string(k));
            worst = std::max(worst, static_cast<double>(r.sum) / static_cast<double>(r.bound));
        }
    out.detail << "characters: " << chars << ", max |S|/bound: " << worst;
}

void c4(const Options&, Outcome& out)
{
    std::size_t checks = 0;
    std::map<std::array<std::uint64_t, 4>, BigRational> lower_cache;
    for (i128 D = -60; D <= 60; ++D) {
        if (D == 0 || (mod(D, 4) != 0 && mod(D, 4) != 1)) continue;
        if (D > 0 && isqrt(D) * isqrt(D) == D) continue;
        const auto sys = ch::decompose(D);
        if (sys.r() == 0) continue;
        const auto etas = ch::all_sign_assignments(sys.r());
        for (std::uint64_t M = 1; M <= 30; ++M) {
            if (std::gcd(sys.Gamma, M) != 1) continue;
            ch::SignHistogram hist(sys, M);
            for (std::uint64_t H : {100, 1000, 10000}) {
                const auto key = std::array<std::uint64_t, 4>{H, sys.Gamma, M, sys.r()};
                auto it = lower_cache.find(key);
                if (it == lower_cache.end())
                    it = lower_cache.emplace(key, ch::lower_bound_S(H, sys.Gamma, M, sys.r())).first;
                for (std::uint64_t x : {0, 1, 9973}) {
                    for (const auto& eta : etas) {
                        ++checks;
                        if (BigRational(hist.count(x, H, eta)) < it->second)
                            out.fail("count below bound at D=" + to_string(D) + " M=" + std::to_string(M) +
                                     " H=" + std::to_string(H));
                    }
                }
            }
        }
    }
    out.detail << "comparisons: " << checks;
}

void c5(const Options& o, Outcome& out)
{
    auto g = rng_for(o, 5);
    double worst = 0;
    for (int done = 0; done < 200;) {
        const std::uint64_t d = uniform(g, 3, 1000);
        const i128 D = uniform(g, 0, 1) ? static_cast<i128>(d) : -static_cast<i128>(d);
        const std::uint64_t M = uniform(g, 2, 1000);
        if (mod(D, 4) != 0 && mod(D, 4) != 1) continue;
        if (D > 0 && isqrt(D) * isqrt(D) == D) continue;
        if (gcd(D, static_cast<i128>(M)) != 1) continue;
        ++done;
        const auto r = ch::least_inert_prime(D, M);
        // q < C0 d^(2/3) M^(1/6)  <=>  q^6 < C0^6 d^4 M
        const BigInt q(r.q), C0(ch::kC0), bd(d);
        if (!(q * q * q * q * q * q < C0 * C0 * C0 * C0 * C0 * C0 * bd * bd * bd * bd * BigInt(M)))
            out.fail("least inert prime above the bound at D=" + to_string(D) + " M=" + std::to_string(M));
        if (!ch::verify_proof_inequalities(d, M).all())
            out.fail("proof inequalities fail at d=" + std::to_string(d) + " M=" + std::to_string(M));
        worst = std::max(worst, r.ratio);
    }
    out.detail << "pairs: 200, max q/bound: " << worst;
}

void c6(const Options&, Outcome& out)
{
    std::size_t cells = 0, entries = 0, max_i0 = 0;
    for (i128 m = 4; m <= 10; ++m)
        for (i128 a = 1; a <= 3; ++a)
            for (i128 b = 1; b <= 3; ++b)
                for (i128 c = 1; c <= 3; ++c) {
                    if (gcd(gcd(a, b), c) != 1) continue;
                    ++cells;
                    auto seq = rg::inert_sequence(m, a, b, c);
                    max_i0 = std::max(max_i0, seq.i0);
                    for (bool v : rg::verify_eq34(seq, seq.K, seq.i0, seq.i0 + 10)) {
                        ++entries;
                        if (!v)
                            out.fail("inequality false at m=" + to_string(m) + " (" + to_string(a) + "," +
                                     to_string(b) + "," + to_string(c) + ")");
                    }
                }
    out.detail << "cells: " << cells << ", entries: " << entries << ", max i0: " << max_i0;
}

// Congruences of a constructed N_i, checked from scratch.
void check_Ni(const rg::WitnessIntegers& w, const rg::InertSequence& seq, Outcome& out)
{
    const auto part = local::partition(w.m, w.a, w.b, w.c);
    const i128 m8 = 8 * (w.m - 2), q = static_cast<i128>(w.q), q0 = static_cast<i128>(seq.q0);
    const i128 base = (w.m - 4) * (w.m - 4) * (w.a + w.b);
    const std::string at = " at m=" + to_string(w.m) + " (" + to_string(w.a) + "," + to_string(w.b) + "," +
                           to_string(w.c) + ") i=" + std::to_string(w.i);
    if (w.q != seq.q(w.i)) out.fail("q_i mismatch" + at);
    if (w.N % q != 0 || (w.N / q) % q == 0) out.fail("ord_q N != 1" + at);
    if (mod(w.N - base, m8) != 0) out.fail("N != (m-4)^2(a+b) mod 8(m-2)" + at);
    if (mod(w.N - m8 * w.c - q0, q0 * q0) != 0) out.fail("N != 8(m-2)c + q0 mod q0^2" + at);
    if (gcd(w.N / q, part.P_c) != 1) out.fail("gcd(N/q, P_c) != 1" + at);
    if (w.N != m8 * w.n + base || w.n <= 0) out.fail("n does not match N" + at);
    if (Rational(w.n) > seq.K * Rational(q0 * q0 * q)) out.fail("n > K q0^2 q" + at);
    if (part.delta) {
        const i128 fl = 2 / nt::ord_p(w.m, 2);
        if (mod(w.n - fl * (w.a + w.b + w.c), 8) != 0) out.fail("mod 8 condition" + at);
    }
    const i128 shifted = w.N - m8 * w.c;
    if (shifted > 0 && (shifted % q0 != 0 || (shifted / q0) % q0 == 0)) out.fail("ord_q0(N - 8(m-2)c) != 1" + at);
    if (!rg::binary_nonrepresentation_check(w.m, w.a, w.b, w.N, w.q)) out.fail("binary certificate" + at);
    if (rg::phi_binary_represents(w.m, w.a, w.b, w.N)) out.fail("N represented by the binary form" + at);
}

void check_N0(const rg::WitnessIntegers& w, Outcome& out)
{
    const auto part = local::partition(w.m, w.a, w.b, w.c);
    const auto prof = nt::profile(static_cast<std::uint64_t>(part.P_abc));
    const i128 m8 = 8 * (w.m - 2), base = (w.m - 4) * (w.m - 4) * (w.a + w.b + w.c);
    const std::string at = " at m=" + to_string(w.m) + " (" + to_string(w.a) + "," + to_string(w.b) + "," +
                           to_string(w.c) + ")";
    for (auto [N, n] : {std::pair{w.N, w.n}, std::pair{*w.N_bar, *w.n_bar}}) {
        if (N != m8 * n + base) out.fail("N != 8(m-2)n + (m-4)^2(a+b+c)" + at);
        if (gcd(N, part.P_abc) != 1) out.fail("gcd(N, P_abc) != 1" + at);
        if (part.delta && mod(n - (2 / nt::ord_p(w.m, 2)) * (w.a + w.b + w.c), 8) != 0) out.fail("mod 8" + at);
    }
    if (Rational(w.n) > Rational(8) * prof.rho) out.fail("n0 > 8 rho(P_abc)" + at);
    const i128 B = static_cast<i128>(polyforms::coordinate_bound(w.m, w.a, *w.n_bar));
    for (i128 x = -B; x <= B; ++x)
        if (w.a * polyforms::polygonal_number(w.m, x) == *w.n_bar) out.fail("n0bar is a p_m value" + at);
}

void c7(const Options& o, Outcome& out)
{
    auto g = rng_for(o, 7);
    std::size_t pairs = 0, regular = 0;
    for (int done = 0; done < 100;) {
        const i128 m = static_cast<i128>(uniform(g, 4, 12));
        const i128 a = static_cast<i128>(uniform(g, 1, 10)), b = static_cast<i128>(uniform(g, 1, 10)),
                   c = static_cast<i128>(uniform(g, 1, 10));
        const std::size_t i = uniform(g, 1, 40);
        if (gcd(gcd(a, b), c) != 1) continue;
        ++done;
        auto seq = rg::inert_sequence(m, a, b, c, i);
        check_Ni(rg::construct_Ni(m, a, b, c, seq, i), seq, out);
        if (!local::partition(m, a, b, c).G_all().empty()) continue;
        ++pairs;
        auto w = rg::construct_N0_pair(m, a, b, c);
        check_N0(w, out);
        // a <= n0 needs n0 to be represented, which regularity supplies.
        auto ex = rg::exceptions(polyforms::PolygonalForm(m, {a, b, c}), 10000, rg::kDefaultBudget, 1);
        if (ex.exceptions.empty()) {
            ++regular;
            if (std::min({a, b, c}) > w.n) out.fail("a > n0 for a candidate-regular form");
        }
    }
    out.detail << "N_i: 100, N0 pairs: " << pairs << " (" << regular << " candidate-regular)";
}

void c8(const Options& o, Outcome& out)
{
    auto g = rng_for(o, 8);
    static constexpr std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::size_t fired = 0, drawn = 0;
    std::map<int, std::size_t> by_rule;
    while (fired < 10000) {
        ++drawn;
        const i128 m = static_cast<i128>(uniform(g, 3, 12));
        const i128 a = static_cast<i128>(uniform(g, 1, 10)), b = static_cast<i128>(uniform(g, 1, 10)),
                   c = static_cast<i128>(uniform(g, 1, 10));
        const i128 n = static_cast<i128>(uniform(g, 1, 500));
        const std::uint64_t p = primes[uniform(g, 0, std::size(primes) - 1)];
        const auto part = local::partition(m, a, b, c);
        auto fp = local::fast_path(m, {a, b, c}, n, p, part);
        if (!fp) continue;
        ++fired;
        ++by_rule[static_cast<int>(fp->rule)];
        const std::vector<i128> co{a, b, c};
        const i128 N = polyforms::target_N(m, co, n);
        auto e0 = local::padic_solvable(m, co, N, p, 0);
        auto e2 = local::padic_solvable(m, co, N, p, 2);
        const std::string at = " at m=" + to_string(m) + " (" + to_string(a) + "," + to_string(b) + "," +
                               to_string(c) + ") n=" + to_string(n) + " p=" + std::to_string(p);
        if (!e0.represented) out.fail("fast path and engine disagree" + at);
        if (e0.represented != e2.represented) out.fail("verdict changes with extra precision" + at);
        if (e0.certificate && !local::check_certificate(m, co, N, p, *e0.certificate)) out.fail("bad certificate" + at);
    }
    out.detail << "fired: " << fired << " of " << drawn << " draws, by rule:";
    for (auto [r, k] : by_rule) out.detail << " " << local::rule_name(static_cast<local::Rule>(r)) << "=" << k;
}

void c9(const Options&, Outcome& out)
{
    using Dec = boost::multiprecision::cpp_dec_float_50;
    const Dec C0 = 20664, C2 = 5632;
    const Dec C1 = pow(Dec(2), Dec(9) / 5) * pow(C0, Dec(6) / 5);
    const Dec C3 = pow(Dec(4), Dec(26) / 15) * pow(C0, Dec(13) / 5) * C1;
    const Dec C4 = pow(Dec(24), Dec(12) / 5) * pow(C2, Dec(112) / 15) * C3 * C3;
    const auto L = rg::bound_ledger(3, 1, 1, 1);
    if (!(L.C2.lo == 5632 && L.C2.hi == 5632)) out.fail("C2 != 5632");
    // The oracle carries ~50 digits; containment is judged up to that.
    const Dec slack("1e-40");
    auto to_dec = [](const BigRational& r) { return Dec(numerator(r).str()) / Dec(denominator(r).str()); };
    auto check = [&](const char* name, const enclosure::Interval& iv, const Dec& truth) {
        const Dec lo = to_dec(iv.lo), hi = to_dec(iv.hi);
        if (truth < lo * (1 - slack) || truth > hi * (1 + slack)) out.fail(std::string(name) + " not enclosed");
        if (iv.relative_width() >= 1e-6) out.fail(std::string(name) + " enclosure too wide");
        out.detail << name << "=" << truth.str(12, std::ios_base::scientific) << " ";
    };
    check("C1", L.C1, C1);
    check("C3", L.C3, C3);
    check("C4", L.C4, C4);
}

void c10(const Options& o, Outcome& out)
{
    rg::SearchOptions so;
    so.threads = o.threads;
    auto s1 = rg::search(3, 10, 100000, so);
    auto s2 = rg::search(3, 10, 200000, so);
    if (!s1.complete || !s2.complete) out.fail("search incomplete");
    if (s1.candidates() != s2.candidates()) out.fail("candidate sets differ");
    for (const auto* s : {&s1, &s2})
        for (const auto& t : s->triples)
            if (t.status == rg::Status::candidate_regular && !(t.ledger && t.ledger->a_ok && t.ledger->b_ok))
                out.fail("ledger flag false for (" + to_string(t.abc[0]) + "," + to_string(t.abc[1]) + "," +
                         to_string(t.abc[2]) + ")");
    out.detail << "triples: " << s2.triples.size() << ", candidates: " << s2.candidates().size();
}

void c11(const Options&, Outcome& out)
{
    for (i128 b : {2, 3, 5}) {
        const auto d = rg::dickson_check(b, 20);
        out.detail << "b=" << to_string(b) << " i0=" << d.i0 << " p1..p3=" << d.primes[0] << "," << d.primes[1] << ","
                   << d.primes[2] << " fails at i=";
        bool any = false;
        for (std::size_t k = 0; k < d.holds.size(); ++k)
            if (!d.holds[k]) {
                out.detail << (any ? "," : "") << d.i0 + k;
                any = true;
            }
        if (!any) out.detail << "none";
        out.detail << "; ";
        if (!d.all()) out.ok = false;
    }
}

using Fn = void (*)(const Options&, Outcome&);
constexpr std::array<Fn, kCount> kFns{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};

} // namespace

Result run(int id, const Options& opts)
{
    require(id >= 1 && id <= kCount, "acceptance: criterion id out of range");
    Result r;
    r.id = id;
    r.name = kCriteria[static_cast<std::size_t>(id - 1)].name;
    r.limit_seconds = kCriteria[static_cast<std::size_t>(id - 1)].limit;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        kFns[static_cast<std::size_t>(id - 1)](opts, out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.math_ok = out.ok;
    r.pass = out.ok && r.seconds < r.limit_seconds;
    r.detail = out.detail.str();
    return r;
}

std::vector<Result> run_all(const std::vector<int>& ids, const Options& opts,
                            const std::function<void(const Result&)>& on_result)
{
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kCount; ++i) todo.push_back(i);
    std::vector<Result> out;
    for (int id : todo) {
        out.push_back(run(id, opts));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string line(const Result& r)
{
    char head[160];
    std::snprintf(head, sizeof head, "%s %2d  %-32s (%.2f s / %.0f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.limit_seconds);
    std::string s = head;
    if (r.math_ok && !r.pass) s += "  time limit exceeded;";
    std::string detail = r.detail;
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    return s + "  " + detail;
}

} // namespace polyreg::acceptance
