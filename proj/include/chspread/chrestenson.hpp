#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chspread/padic.hpp"
#include "chspread/signal.hpp"

namespace chspread {

/// exp(-2*pi*j * r / p) with exact values at the four cardinal angles.
cplx root_of_unity(int p, int r);

/// Chrestenson kernel C(n, omega) = exp(-2*pi*j/p * (omega (x)_p n)).
/// Unit modulus; a p-th root of unity.
cplx kernel(std::uint64_t n, const PFraction& omega);

/// Tabulated kernel for omega = K/p^m, K = 0..p^m-1. Rows are pairwise
/// orthogonal with squared norm N.
struct ChrestensonMatrix {
    int p = 2;
    int m = 1;
    std::size_t size = 0;                  // N = p^m
    std::vector<std::vector<cplx>> rows;   // rows[K][n]
};

/// Default cap on N = p^m (entries per row).
constexpr std::size_t kMatrixRowLimit = std::size_t{1} << 16;

ChrestensonMatrix chrestenson_matrix(Radix p, int m,
                                     std::size_t row_limit = kMatrixRowLimit);

/// Discrete Chrestenson Transform, unnormalized forward:
///   X[K] = sum_n x[n] * exp(-2*pi*j/p * pmul(K/p^m, n)).
/// Requires length(x) = p^m.
Signal dcht_forward(const Signal& x, Radix p);

/// Inverse DCHT with 1/N normalization:
///   x[n] = (1/N) sum_K X[K] * exp(+2*pi*j/p * pmul(K/p^m, n)).
Signal dcht_inverse(const Signal& X, Radix p);

/// Plain unnormalized forward DFT by direct summation; reference for the
/// N = p equivalence checks and for the periodogram.
Signal dft_reference(const Signal& x);

}  // namespace chspread
