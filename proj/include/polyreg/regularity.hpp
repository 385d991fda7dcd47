#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyreg/checked.hpp"
#include "polyreg/enclosure.hpp"
#include "polyreg/polyforms.hpp"
#include "polyreg/rational.hpp"

/// Candidate regularity of ternary polygonal forms: finite exception scans,
/// the inert-prime sequences and witness integers used to bound regular
/// forms, the explicit coefficient bounds, and the triple search driver.
namespace polyreg::regularity {

using enclosure::BigInt;
using enclosure::BigRational;
using enclosure::Interval;
using enclosure::PowerProduct;

inline constexpr std::int64_t kC0 = 20664;
inline constexpr std::int64_t kC2 = 5632; // 2^9 * 11

struct KkoCount {
    i128 count = 0;
    Rational lower;
};

/// #{j in [0, n) : gcd(ell j + u, prod T) = 1} and the lower bound
/// n phi(P)/P - 2^omega(P) + 1.
KkoCount kkO_count(i128 u, i128 ell, i128 n, const std::vector<std::uint64_t>& T);

/// 24 P_ab rho(P_abc).
Rational K_value(i128 m, i128 a, i128 b, i128 c);

struct InertSequence {
    i128 m = 4;
    i128 a = 1, b = 1, c = 1;
    std::uint64_t q0 = 0;
    std::vector<std::uint64_t> qs; // qs[0] is q_1
    std::size_t i0 = 0;
    Rational K;
    /// C1 P_{m-2}^{1/6} (q0^3 K)^{1/5} (ab)^{4/5}
    PowerProduct threshold;
    Interval threshold_value;

    std::uint64_t q(std::size_t i) const { return qs.at(i - 1); } // 1-based
};

/// q0 and q_1, ..., q_max(upto, i0+1). The q0 bound and the position of
/// the threshold are checked exactly.
InertSequence inert_sequence(i128 m, i128 a, i128 b, i128 c, std::size_t upto = 0);

/// Append further q_i until the sequence holds `count` terms.
void extend(InertSequence& seq, std::size_t count);

/// Entry i - i_from is K q0^2 q_{i+1} < (m-3) q_1 ... q_i.
std::vector<bool> verify_eq34(InertSequence& seq, const Rational& K, std::size_t i_from, std::size_t i_to);

struct WitnessIntegers {
    enum class Kind { N0_pair, Ni };
    Kind kind = Kind::N0_pair;
    i128 m = 3;
    i128 a = 1, b = 1, c = 1;
    std::size_t i = 0; // Ni only
    std::uint64_t q = 0;  // q_i, Ni only
    i128 N = 0;
    i128 n = 0;
    i128 v = 0;
    std::optional<i128> N_bar, n_bar, v_bar; // N0 pair only
    i128 w0 = 0;
    i128 u = 0;
    i128 s = 1; // Ni only
    std::vector<std::string> certificates;
    friend bool operator==(const WitnessIntegers&, const WitnessIntegers&) = default;
};

/// N0 = 8^{d+1}(m-2)v0 + u and its partner, first admissible v0 and v0bar.
WitnessIntegers construct_N0_pair(i128 m, i128 a, i128 b, i128 c);

WitnessIntegers construct_Ni(i128 m, i128 a, i128 b, i128 c, InertSequence& seq, std::size_t i);

/// N is not represented by a x^2 + b y^2 (with the shifted coordinates of
/// phi_{m,(a,b)}) when (-4ab/q) = -1 and ord_q N = 1.
bool binary_nonrepresentation_check(i128 m, i128 a, i128 b, i128 N, std::uint64_t q);

/// Does a(2(m-2)x - (m-4))^2 + b(2(m-2)y - (m-4))^2 = N have an integer
/// solution? Direct enumeration.
bool phi_binary_represents(i128 m, i128 a, i128 b, i128 N);

struct ExceptionReport {
    polyforms::PolygonalForm form;
    std::uint64_t N_max = 0;
    std::uint64_t scanned_to = 0; // every n <= scanned_to was decided
    std::vector<std::uint64_t> exceptions;
    bool scan_complete = true;
    bool truncated = false; // stopped after `limit` exceptions
    friend bool operator==(const ExceptionReport&, const ExceptionReport&) = default;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 30;

/// n <= N_max locally represented but not represented. With a nonzero
/// limit the scan stops after that many exceptions.
ExceptionReport exceptions(const polyforms::PolygonalForm& form, std::uint64_t N_max,
                           std::uint64_t budget_bytes = kDefaultBudget, std::size_t limit = 0);

struct BoundLedger {
    i128 m = 3;
    i128 a = 1, b = 1, c = 1;
    Interval C0, C1, C2, C3, C4;
    Rational K;
    i128 P_abc = 1;
    Rational rho_abc;
    Rational rhs_a;  // 8 rho(P_abc)
    Rational rhs_b;  // 64*11 P_abc rho(P_abc)/phi(P_abc)
    Rational rhs_ab; // C2 P_abc rho(P_abc)^2/phi(P_abc)
    Interval rhs_c;  // C3 P_{m-2}^{3/5} P_c^{1/2} K^{6/5} (ab)^{38/15}
    Interval rhs_final; // C4 rho(P_abc)^18 (P_abc/phi(P_abc))^{112/15}
    bool a_ok = false;
    bool b_ok = false;
    bool c_ok = false;
    bool abc_ok = false;
    bool final_ok = false;
    friend bool operator==(const BoundLedger&, const BoundLedger&) = default;
};

BoundLedger bound_ledger(i128 m, i128 a, i128 b, i128 c);

enum class Status { candidate_regular, irregular, needs_descent, partial };
const char* status_name(Status s);
Status status_from_name(const std::string& s);

struct TripleResult {
    std::array<i128, 3> abc{};
    Status status = Status::candidate_regular;
    std::vector<std::uint64_t> exceptions; // first few only for irregular triples
    std::vector<std::uint64_t> G;          // for needs-descent
    std::optional<BoundLedger> ledger;
    friend bool operator==(const TripleResult&, const TripleResult&) = default;
};

struct SearchOptions {
    unsigned threads = 1;
    std::uint64_t budget_bytes = kDefaultBudget;
    std::size_t exception_limit = 8;
};

struct SearchReport {
    i128 m = 3;
    i128 c_max = 1;
    std::uint64_t N_max = 0;
    std::vector<TripleResult> triples; // lexicographic (a, b, c)
    bool complete = true;
    std::optional<std::array<i128, 3>> watermark; // last completed triple

    std::vector<std::array<i128, 3>> candidates() const;
    friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

SearchReport search(i128 m, i128 c_max, std::uint64_t N_max, const SearchOptions& opts = {});

struct DicksonCheck {
    i128 b = 1;
    std::vector<std::uint64_t> primes; // odd primes not represented by x^2 + b y^2
    std::size_t i0 = 0;
    std::vector<bool> holds; // index i - i0 for i in [i0, primes.size() - 1]
    bool all() const;
};

/// p_{i+1} < p_1 ... p_i for i >= i0, with the first `count` odd primes not
/// represented by x^2 + b y^2 and p_{i0} < b < p_{i0+1}.
DicksonCheck dickson_check(i128 b, std::size_t count = 20);

} // namespace polyreg::regularity
