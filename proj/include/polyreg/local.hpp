#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyreg/bitset.hpp"
#include "polyreg/checked.hpp"

namespace polyreg::local {

/// Prime bookkeeping for a ternary form. P_x_yz holds P_m(x, yz), the primes
/// q | x with (-4yz/q) = -1 and q not dividing m-2.
struct PrimePartition {
    i128 m = 3;
    i128 a = 1, b = 1, c = 1;
    int delta = 0; // 1 iff ord_2(m) >= 2
    std::vector<std::uint64_t> P_a_bc, P_b_ac, P_c_ab;
    std::vector<std::uint64_t> G_ab, G_ac, G_bc;
    i128 P_m2 = 1;       // odd primes of m-2
    i128 P_ab = 1;       // primes of P_a_bc and P_b_ac
    i128 P_ab_prime = 1; // those also dividing m-4
    i128 P_c = 1;
    i128 P_abc = 1;

    std::vector<std::uint64_t> P_all() const; // P_m(a,b,c), ascending
    std::vector<std::uint64_t> G_all() const; // G_m(a,b,c), ascending
};

PrimePartition partition(i128 m, i128 a, i128 b, i128 c);

enum class Rule { FastPathI, FastPathII, FastPathIII, FastPathIV, HenselLift, ExhaustiveResidue };
const char* rule_name(Rule r);
Rule rule_from_name(const std::string& s);

/// Residues x (mod p^(2t+1)) with F(x) = 0 mod p^(2t+1) and ord_p of the
/// partial derivative in x_index exactly t, where F = phi - N.
struct HenselCertificate {
    std::vector<i128> residues;
    unsigned t = 0;
    unsigned index = 0;
    friend bool operator==(const HenselCertificate&, const HenselCertificate&) = default;
};

struct LocalDecision {
    bool represented = false;
    Rule rule = Rule::ExhaustiveResidue;
    std::optional<HenselCertificate> certificate;
    friend bool operator==(const LocalDecision&, const LocalDecision&) = default;
};

/// Re-check the three Hensel congruences for F = phi_{m,coeffs} - N.
bool check_certificate(i128 m, std::span<const i128> coeffs, i128 N, std::uint64_t p, const HenselCertificate& cert);

/// Largest residue ring the engine will tabulate.
inline constexpr std::uint64_t kMaxResidueModulus = std::uint64_t(1) << 22;

/// Exact decision of N ->_{Z_p} phi_{m,coeffs}. Writing y = 2(m-2)x - (m-4):
/// when ord_p(m-4) < ord_p(2(m-2)) every y has the same valuation, so every
/// partial derivative has a fixed valuation t and solvability is decided by
/// residues mod p^(2t+1). Otherwise y ranges over 2(m-2)Z_p and the problem
/// is homogeneous, decided by peeling p^2 and checking primitive residues.
/// Tables are built per prime on first use.
class Engine {
public:
    Engine(i128 m, std::vector<i128> coeffs, unsigned extra_precision = 0);
    ~Engine();
    Engine(Engine&&) noexcept;
    Engine& operator=(Engine&&) noexcept;

    LocalDecision decide(i128 N, std::uint64_t p, bool with_certificate = true);

    i128 m() const { return m_; }
    const std::vector<i128>& coeffs() const { return coeffs_; }

private:
    struct Tri;
    struct Tables;
    Tables& tables(std::uint64_t p);
    const Tri& primitive_table(Tables& tb, unsigned i);
    i128 m_;
    std::vector<i128> coeffs_;
    unsigned extra_;
    std::map<std::uint64_t, std::unique_ptr<Tables>> cache_;
};

LocalDecision padic_solvable(i128 m, std::span<const i128> coeffs, i128 N, std::uint64_t p,
                             unsigned extra_precision = 0);

/// Sufficient conditions for representation; empty when none applies.
/// Criterion (i) refers to N = 8(m-2)n + (m-4)^2(a+b+c) and needs gcd(a,b,c) = 1.
std::optional<LocalDecision> fast_path(i128 m, std::array<i128, 3> abc, i128 n, std::uint64_t p,
                                       const PrimePartition& part);

enum class Mode { automatic, full };

struct LocalVerdict {
    bool verdict = true;
    bool narrowed = false;
    std::map<std::uint64_t, LocalDecision> per_prime;
};

/// Reusable checker for one form: partition, prime list and engine tables
/// are computed once.
class LocalChecker {
public:
    LocalChecker(i128 m, std::array<i128, 3> abc, Mode mode = Mode::automatic, unsigned extra_precision = 0);
    LocalVerdict check(i128 n, bool with_certificates = true);
    bool represented(i128 n);
    const PrimePartition& partition() const { return part_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    bool narrowed() const { return narrowed_; }

private:
    i128 target_N_of(i128 n) const;
    i128 m_;
    std::array<i128, 3> abc_;
    PrimePartition part_;
    bool narrowed_ = false;
    std::vector<std::uint64_t> primes_;
    Engine engine_;
};

LocalVerdict locally_represented(i128 m, std::array<i128, 3> abc, i128 n, Mode mode = Mode::automatic);

} // namespace polyreg::local
