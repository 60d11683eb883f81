#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chspread/errors.hpp"

namespace chspread {

/// Number base for digit arithmetic. Any integer p >= 2 (p = 2 is the
/// Walsh case).
struct Radix {
    int p;

    explicit Radix(int base);
};

/// Exact nonnegative rational, the input domain of to_digits.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

/// Exact base-p digit expansion of a nonnegative number.
///
/// integer_digits[i] is the p^i coefficient (least significant first);
/// fractional_digits[j-1] is the p^-j coefficient. Both lists are minimal:
/// no trailing zeros beyond the exact expansion.
struct DigitVector {
    Radix radix;
    std::vector<int> integer_digits;
    std::vector<int> fractional_digits;

    /// Exact reconstruction of the represented value.
    Rational reconstruct() const;
};

/// Exact fraction K / p^m in [0, 1), the frequency argument of the
/// Chrestenson kernel.
struct PFraction {
    std::int64_t numerator = 0;  // K
    int radix_p = 2;             // p
    int exponent = 1;            // m, value = K / p^m

    PFraction() = default;
    PFraction(std::int64_t K, int p, int m);

    /// Parses "K/p" or "K/p^m", e.g. "3/8" or "11/8^2".
    static PFraction parse(std::string_view text);

    double value() const;
    bool is_zero() const { return numerator == 0; }

    /// Fractional digits omega_1..omega_m (omega_j is the p^-j coefficient).
    std::vector<int> fractional_digits() const;

    std::string to_string() const;
};

/// Exact base-p expansion of a nonnegative rational. Throws
/// NonTerminatingExpansion if the reduced denominator does not divide a
/// power of p.
DigitVector to_digits(Rational value, Radix radix);

/// Carry-free digit-pairing product of omega in [0,1) and integer n,
/// reduced mod p. Pairs omega's p^-j digit with n's p^(j-1) digit, so each
/// pair's place values multiply to p^-1. Exact integer arithmetic.
int pmul(const PFraction& omega, std::uint64_t n, Radix radix);

/// Digitwise mod-p sum of two nonnegative integers (no carries).
std::uint64_t digitwise_add(std::uint64_t a, std::uint64_t b, Radix radix);

}  // namespace chspread
