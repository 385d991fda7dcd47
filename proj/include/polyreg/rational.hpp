#pragma once

#include <compare>
#include <string>

#include "polyreg/checked.hpp"

namespace polyreg {

/// Exact rational over checked 128-bit integers, always in lowest terms with
/// a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(i128 num) : num_(num) {} // NOLINT: implicit from integers is intended
    Rational(i128 num, i128 den);

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    i128 floor() const;
    i128 ceil() const;
    double to_double() const;
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(sub(0, num_), den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

} // namespace polyreg
