#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyreg/bitset.hpp"
#include "polyreg/checked.hpp"

namespace polyreg::polyforms {

/// sum a_i p_m(x_i) with one to three positive coefficients.
struct PolygonalForm {
    i128 m = 3;
    std::vector<i128> coeffs;

    PolygonalForm() = default;
    PolygonalForm(i128 m_, std::vector<i128> coeffs_);

    bool primitive() const;
    bool ordered() const;
    i128 discriminant() const;
    i128 coeff_sum() const;
    std::string str() const;
    friend bool operator==(const PolygonalForm&, const PolygonalForm&) = default;
};

/// ((m-2)x^2 - (m-4)x)/2, the generalized m-gonal number.
i128 polygonal_number(i128 m, i128 x);

i128 evaluate(const PolygonalForm& form, std::span<const i128> xs);

/// sum a_i (2(m-2)x_i - (m-4))^2
i128 phi_evaluate(i128 m, std::span<const i128> coeffs, std::span<const i128> xs);

/// 8(m-2)n + (m-4)^2 (sum of coeffs): the value phi must take when the form takes n.
i128 target_N(i128 m, std::span<const i128> coeffs, i128 n);

/// Least X >= 0 with a p_m(x) > n for every |x| > X.
std::uint64_t coordinate_bound(i128 m, i128 a, i128 n);

struct RepresentationWitness {
    i128 n = 0;
    std::optional<std::vector<i128>> xyz;
};

/// Exhaustive search inside coordinate_bound; the last coordinate is solved
/// from the quadratic formula.
RepresentationWitness represents(const PolygonalForm& form, i128 n);

/// Sorted distinct values a p_m(x) <= n_max.
std::vector<std::uint64_t> unary_values(i128 m, i128 a, std::uint64_t n_max);

inline constexpr std::uint64_t kDefaultSetBudget = std::uint64_t(1) << 30;

/// Bit n set iff the form represents n, for n in [0, n_max]. Throws
/// ResourceError when the working bitsets would exceed `budget_bytes`.
Bitset represented_set(const PolygonalForm& form, std::uint64_t n_max, std::uint64_t budget_bytes = kDefaultSetBudget);

} // namespace polyreg::polyforms
