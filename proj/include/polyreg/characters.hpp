#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyreg/checked.hpp"
#include "polyreg/enclosure.hpp"

namespace polyreg::characters {

using enclosure::BigRational;

/// A real Dirichlet character: a product of Legendre symbols (n/p) over
/// `odd_primes` times an optional 2-part built from nu0 = (-4/.) and
/// nu1 = (8/.). Values vanish on n sharing a factor with `modulus`.
struct RealCharacter {
    enum class Two { none, nu0, nu1, nu0nu1 };

    Two two = Two::none;
    std::vector<std::uint64_t> odd_primes;
    std::uint64_t modulus = 1;

    int operator()(i128 n) const;
    bool principal() const { return two == Two::none && odd_primes.empty(); }
    /// Smallest modulus the character is defined on.
    std::uint64_t conductor() const;
    std::string name() const;
};

struct CharacterSystem {
    i128 D = 0;
    std::uint64_t d = 0;
    std::vector<RealCharacter> components;
    std::uint64_t Gamma = 1;

    unsigned r() const { return static_cast<unsigned>(components.size()); }
    /// Product of the component values at n.
    int value(i128 n) const;

    /// For every nonempty subset of components (bit i = component i), the
    /// least n coprime to Gamma on which the product character is -1.
    /// Empty optional when no such n exists in a full period.
    std::vector<std::optional<std::uint64_t>> independence_witnesses() const;
};

struct SignAssignment {
    std::vector<int> etas;
};

/// All 2^r sign assignments in lexicographic order (-1 before +1).
std::vector<SignAssignment> all_sign_assignments(unsigned r);

/// Split (D/.) into independent component characters.
CharacterSystem decompose(i128 D);

/// #{n in (x, x+H) : chi_i(n) = eta_i for all i, gcd(n, M) = 1}, counted
/// by evaluating every n.
std::uint64_t count_S(std::uint64_t x, std::uint64_t H, const CharacterSystem& sys, const SignAssignment& eta,
                      std::uint64_t M);

/// Same count from a periodic table over lcm(Gamma, rad M); one table
/// serves every sign assignment and window.
class SignHistogram {
public:
    SignHistogram(const CharacterSystem& sys, std::uint64_t M);
    std::uint64_t count(std::uint64_t x, std::uint64_t H, const SignAssignment& eta) const;
    std::uint64_t period() const { return period_; }

private:
    std::uint64_t upto(std::uint64_t X, unsigned code) const; // n in [1, X]
    unsigned r_;
    std::uint64_t period_;
    std::vector<std::uint32_t> prefix_; // (period_+1) rows of 2^r counts
};

/// sqrt(k) log k / (3 log 3) + 13 sqrt(k) / 2, rounded up.
BigRational pv_bound(std::uint64_t k);

/// Right-hand side of the S_x(H) lower bound with the character-sum term
/// rounded up, hence itself a valid lower bound.
BigRational lower_bound_S(std::uint64_t H, std::uint64_t Gamma, std::uint64_t M, unsigned r);

/// Upper bound for 2dM 2^w(dM)/phi(dM) (pv(d) + 1); any H above it makes
/// S_0(H) positive for every sign assignment.
BigRational f_bound(std::uint64_t d, std::uint64_t M);

struct PvCheck {
    i128 sum;
    BigRational bound;
    bool ok;
};

/// Sum of chi(n) over x < n <= y against pv_bound(modulus).
PvCheck verify_pv(const RealCharacter& chi, i128 x, i128 y);

/// Largest |sum over x < n <= y| over all 0 <= x < y <= ymax.
PvCheck verify_pv_all_ranges(const RealCharacter& chi, std::uint64_t ymax);

/// Every nonprincipal real character modulo k.
std::vector<RealCharacter> real_characters(std::uint64_t k);

struct InertPrimeResult {
    std::uint64_t q;
    enclosure::BigInt H_bound; // ceil(C0 d^(2/3) M^(1/6))
    double ratio;              // q / H_bound
};

inline constexpr std::uint64_t kC0 = 20664;

InertPrimeResult least_inert_prime(i128 D, std::uint64_t M);

struct ProofInequalities {
    bool eq31;
    bool eq32;
    std::optional<bool> eq33; // only for dM >= 11
    bool small_case;          // 2^w(dM) <= 4, meaningful for dM < 11
    bool all() const { return eq31 && eq32 && eq33.value_or(small_case); }
};

ProofInequalities verify_proof_inequalities(std::uint64_t d, std::uint64_t M);

} // namespace polyreg::characters
