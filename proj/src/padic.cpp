#include "chspread/padic.hpp"

#include <charconv>
#include <numeric>

namespace chspread {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (std::int64_t{1} << 62) / base)
            throw Error("p^m overflows 64-bit range");
        r *= base;
    }
    return r;
}

std::int64_t parse_int(std::string_view s, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(std::string("invalid integer in ") + what + ": '" +
                    std::string(s) + "'");
    return v;
}

}  // namespace

Radix::Radix(int base) : p(base) {
    if (base < 2) throw Error("radix must be >= 2");
}

Rational DigitVector::reconstruct() const {
    Rational r;
    r.num = 0;
    r.den = 1;
    // integer part, most significant first
    for (std::size_t i = integer_digits.size(); i-- > 0;)
        r.num = r.num * radix.p + integer_digits[i];
    for (std::size_t j = 0; j < fractional_digits.size(); ++j) {
        r.num = r.num * radix.p + fractional_digits[j];
        r.den *= radix.p;
    }
    std::int64_t g = std::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

DigitVector to_digits(Rational value, Radix radix) {
    if (value.den <= 0) throw Error("denominator must be positive");
    if (value.num < 0) throw Error("value must be nonnegative");
    std::int64_t g = std::gcd(value.num, value.den);
    if (g > 1) {
        value.num /= g;
        value.den /= g;
    }

    // The expansion terminates iff every prime factor of den divides p.
    std::int64_t d = value.den;
    while (d > 1) {
        std::int64_t g2 = std::gcd(d, static_cast<std::int64_t>(radix.p));
        if (g2 == 1)
            throw NonTerminatingExpansion(
                "denominator does not divide a power of the radix");
        while (d % g2 == 0) d /= g2;
    }

    DigitVector out{radix, {}, {}};
    std::int64_t whole = value.num / value.den;
    std::int64_t frac_num = value.num % value.den;
    while (whole > 0) {
        out.integer_digits.push_back(static_cast<int>(whole % radix.p));
        whole /= radix.p;
    }
    while (frac_num != 0) {
        frac_num *= radix.p;
        out.fractional_digits.push_back(
            static_cast<int>(frac_num / value.den));
        frac_num %= value.den;
    }
    return out;
}

PFraction::PFraction(std::int64_t K, int p, int m)
    : numerator(K), radix_p(p), exponent(m) {
    if (p < 2) throw Error("radix must be >= 2");
    if (m < 1) throw Error("exponent must be >= 1");
    std::int64_t pm = checked_pow(p, m);
    if (K < 0 || K >= pm)
        throw Error("numerator out of range, need 0 <= K < p^m");
}

PFraction PFraction::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw Error("expected omega as 'K/p' or 'K/p^m': '" +
                    std::string(text) + "'");
    std::int64_t K = parse_int(text.substr(0, slash), "omega numerator");
    std::string_view rest = text.substr(slash + 1);
    int m = 1;
    auto caret = rest.find('^');
    if (caret != std::string_view::npos) {
        m = static_cast<int>(parse_int(rest.substr(caret + 1), "omega exponent"));
        rest = rest.substr(0, caret);
    }
    int p = static_cast<int>(parse_int(rest, "omega radix"));
    return PFraction(K, p, m);
}

double PFraction::value() const {
    double v = static_cast<double>(numerator);
    for (int i = 0; i < exponent; ++i) v /= radix_p;
    return v;
}

std::vector<int> PFraction::fractional_digits() const {
    // omega_j = digit of K at base-p position m-j (K written with m digits)
    std::vector<int> lsb_first(exponent, 0);
    std::int64_t K = numerator;
    for (int i = 0; i < exponent && K != 0; ++i) {
        lsb_first[i] = static_cast<int>(K % radix_p);
        K /= radix_p;
    }
    std::vector<int> out(exponent, 0);
    for (int j = 1; j <= exponent; ++j) out[j - 1] = lsb_first[exponent - j];
    return out;
}

std::string PFraction::to_string() const {
    std::string s = std::to_string(numerator) + "/" + std::to_string(radix_p);
    if (exponent != 1) s += "^" + std::to_string(exponent);
    return s;
}

int pmul(const PFraction& omega, std::uint64_t n, Radix radix) {
    if (omega.radix_p != radix.p)
        throw RadixMismatch("omega radix " + std::to_string(omega.radix_p) +
                            " does not match radix " + std::to_string(radix.p));
    const int p = radix.p;
    // omega_{i+1} pairs with n_i; omega_{i+1} is K's digit at position m-1-i.
    std::int64_t K = omega.numerator;
    std::vector<int> Kd(omega.exponent, 0);
    for (int i = 0; i < omega.exponent && K != 0; ++i) {
        Kd[i] = static_cast<int>(K % p);
        K /= p;
    }
    int acc = 0;
    for (int i = 0; n != 0 && i < omega.exponent; ++i, n /= p) {
        int ni = static_cast<int>(n % p);
        acc = (acc + Kd[omega.exponent - 1 - i] * ni) % p;
    }
    return acc;
}

std::uint64_t digitwise_add(std::uint64_t a, std::uint64_t b, Radix radix) {
    const std::uint64_t p = static_cast<std::uint64_t>(radix.p);
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    while (a != 0 || b != 0) {
        std::uint64_t d = (a % p + b % p) % p;
        out += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    return out;
}

}  // namespace chspread
