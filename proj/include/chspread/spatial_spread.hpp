#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chspread/padic.hpp"
#include "chspread/signal.hpp"
#include "chspread/errors.hpp"


namespace chspread {

enum class CodeFamily { Walsh, ChRow, PnMsequence };

/// Unit-modulus chip vector used for code-division (spatial) spreading.
/// Walsh and PN chips are exact +-1.
struct SpreadingCode {
    std::vector<cplx> chips;
    CodeFamily family = CodeFamily::Walsh;
    std::string id;

    std::size_t length() const { return chips.size(); }
};

/// Fibonacci LFSR: stages 1..degree, output taken from stage `degree`,
/// feedback into stage 1 is the XOR of the tap stages. Bit i of `seed`
/// loads stage i+1.
struct LfsrSpec {
    int degree = 3;
    std::vector<int> taps;  // stage numbers, 1..degree
    std::uint32_t seed = 1;
};

/// Row `row` of the 2^m Walsh (p = 2 Chrestenson) matrix, exact +-1 chips.
SpreadingCode walsh_code(int m, std::size_t row);

/// Row `row` of the p^m Chrestenson matrix as a complex spreading code.
SpreadingCode ch_code(Radix p, int m, std::size_t row);

/// Maximal-length +-1 PN sequence of length 2^degree - 1 (bit b maps to
/// 1 - 2b). Period and balance hold when the taps are primitive.
SpreadingCode pn_msequence(const LfsrSpec& spec);

/// Synchronous multi-user composite:
///   out[n*Ls + k] = sum_u symbols[u][n] * codes[u].chips[k].
Signal mux_users(const std::vector<Signal>& symbols_per_user,
                 const std::vector<SpreadingCode>& codes);

/// Correlation receiver for one user:
///   est[n] = (1/Ls) sum_k composite[n*Ls + k] * conj(code[k]).
Signal demux_user(const Signal& composite, const SpreadingCode& code,
                  std::size_t symbol_count);

/// Normalized cyclic cross-correlation
///   (1/Ls) sum_k a[k] * conj(b[(k + lag) mod Ls]).
cplx cross_correlation(const SpreadingCode& a, const SpreadingCode& b,
                       std::int64_t lag);

}  // namespace chspread
