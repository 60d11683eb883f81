#include "chspread/chrestenson.hpp"

#include <cmath>
#include <numbers>

#include "chspread/errors.hpp"

namespace chspread {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Table of the p roots exp(-2*pi*j*r/p), r = 0..p-1.
std::vector<cplx> root_table(int p) {
    std::vector<cplx> roots(p);
    for (int r = 0; r < p; ++r) roots[r] = root_of_unity(p, r);
    return roots;
}

/// N = p^m check; returns m or throws.
int radix_log(std::size_t n, int p) {
    if (n == 0) throw LengthNotPowerOfRadix("empty signal");
    int m = 0;
    std::size_t v = n;
    while (v % p == 0) {
        v /= p;
        ++m;
    }
    if (v != 1 || m < 1)
        throw LengthNotPowerOfRadix("length " + std::to_string(n) +
                                    " is not a positive power of " +
                                    std::to_string(p));
    return m;
}

/// Base-p digits of every index 0..N-1, m digits each, LSB first.
std::vector<int> index_digits(std::size_t n_values, int p, int m) {
    std::vector<int> digits(n_values * m);
    for (std::size_t n = 0; n < n_values; ++n) {
        std::size_t v = n;
        for (int i = 0; i < m; ++i) {
            digits[n * m + i] = static_cast<int>(v % p);
            v /= p;
        }
    }
    return digits;
}

/// Shared direct-summation core for the DCHT pair. `sign` +1 selects the
/// conjugated (inverse) kernel.
Signal dcht_direct(const Signal& in, Radix p, int sign, double scale) {
    const std::size_t N = in.size();
    const int m = radix_log(N, p.p);
    const auto digits = index_digits(N, p.p, m);
    auto roots = root_table(p.p);
    if (sign > 0)
        for (auto& r : roots) r = std::conj(r);

    Signal out;
    out.sample_rate = in.sample_rate;
    out.samples.resize(N);
    for (std::size_t K = 0; K < N; ++K) {
        const int* Kd = &digits[K * m];
        cplx acc = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const int* nd = &digits[n * m];
            int r = 0;
            for (int i = 0; i < m; ++i) r += Kd[m - 1 - i] * nd[i];
            acc += in.samples[n] * roots[r % p.p];
        }
        out.samples[K] = acc * scale;
    }
    return out;
}

}  // namespace

cplx root_of_unity(int p, int r) {
    r %= p;
    if (r < 0) r += p;
    // exact values on the axes keep p = 2 and p = 4 chips integral
    if (r == 0) return {1.0, 0.0};
    if (2 * r == p) return {-1.0, 0.0};
    if (4 * r == p) return {0.0, -1.0};
    if (4 * r == 3 * p) return {0.0, 1.0};
    double angle = -kTwoPi * r / p;
    return {std::cos(angle), std::sin(angle)};
}

cplx kernel(std::uint64_t n, const PFraction& omega) {
    int r = pmul(omega, n, Radix(omega.radix_p));
    return root_of_unity(omega.radix_p, r);
}

ChrestensonMatrix chrestenson_matrix(Radix p, int m, std::size_t row_limit) {
    if (m < 1) throw Error("matrix order m must be >= 1");
    std::size_t N = 1;
    for (int i = 0; i < m; ++i) {
        N *= static_cast<std::size_t>(p.p);
        if (N > row_limit)
            throw SizeLimitExceeded("p^m = " + std::to_string(p.p) + "^" +
                                    std::to_string(m) + " exceeds row limit " +
                                    std::to_string(row_limit));
    }

    ChrestensonMatrix mat;
    mat.p = p.p;
    mat.m = m;
    mat.size = N;
    mat.rows.resize(N);
    const auto roots = root_table(p.p);
    const auto digits = index_digits(N, p.p, m);
    for (std::size_t K = 0; K < N; ++K) {
        mat.rows[K].resize(N);
        const int* Kd = &digits[K * m];
        for (std::size_t n = 0; n < N; ++n) {
            const int* nd = &digits[n * m];
            int r = 0;
            for (int i = 0; i < m; ++i) r += Kd[m - 1 - i] * nd[i];
            mat.rows[K][n] = roots[r % p.p];
        }
    }
    return mat;
}

Signal dcht_forward(const Signal& x, Radix p) {
    return dcht_direct(x, p, -1, 1.0);
}

Signal dcht_inverse(const Signal& X, Radix p) {
    return dcht_direct(X, p, +1, 1.0 / static_cast<double>(X.size()));
}

Signal dft_reference(const Signal& x) {
    const std::size_t N = x.size();
    if (N == 0) throw Error("empty signal");
    std::vector<cplx> tw(N);
    for (std::size_t j = 0; j < N; ++j) {
        double angle = -kTwoPi * static_cast<double>(j) / static_cast<double>(N);
        tw[j] = {std::cos(angle), std::sin(angle)};
    }
    Signal out;
    out.sample_rate = x.sample_rate;
    out.samples.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        cplx acc = 0.0;
        for (std::size_t n = 0; n < N; ++n)
            acc += x.samples[n] * tw[(k * n) % N];
        out.samples[k] = acc;
    }
    return out;
}

}  // namespace chspread
