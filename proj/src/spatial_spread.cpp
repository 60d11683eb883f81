#include "chspread/spatial_spread.hpp"

#include <algorithm>

#include "chspread/chrestenson.hpp"
#include "chspread/errors.hpp"

namespace chspread {

SpreadingCode walsh_code(int m, std::size_t row) {
    if (m < 1) throw Error("walsh order m must be >= 1");
    std::size_t N = std::size_t{1} << m;
    if (row >= N)
        throw RowOutOfRange("walsh row " + std::to_string(row) +
                            " out of range for m=" + std::to_string(m));
    SpreadingCode code;
    code.family = CodeFamily::Walsh;
    code.id = "walsh:m=" + std::to_string(m) + ",row=" + std::to_string(row);
    code.chips.resize(N);
    PFraction omega(static_cast<std::int64_t>(row), 2, m);
    for (std::size_t n = 0; n < N; ++n) {
        // p = 2 residue is 0 or 1; keep chips exact +-1
        int r = pmul(omega, n, Radix(2));
        code.chips[n] = r == 0 ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    }
    return code;
}

SpreadingCode ch_code(Radix p, int m, std::size_t row) {
    if (m < 1) throw Error("ch order m must be >= 1");
    std::size_t N = 1;
    for (int i = 0; i < m; ++i) N *= static_cast<std::size_t>(p.p);
    if (row >= N)
        throw RowOutOfRange("ch row " + std::to_string(row) +
                            " out of range for p^m=" + std::to_string(N));
    SpreadingCode code;
    code.family = CodeFamily::ChRow;
    code.id = "ch:p=" + std::to_string(p.p) + ",m=" + std::to_string(m) +
              ",row=" + std::to_string(row);
    code.chips.resize(N);
    PFraction omega(static_cast<std::int64_t>(row), p.p, m);
    for (std::size_t n = 0; n < N; ++n) code.chips[n] = kernel(n, omega);
    return code;
}

SpreadingCode pn_msequence(const LfsrSpec& spec) {
    if (spec.degree < 2 || spec.degree > 31)
        throw Error("lfsr degree must be in [2, 31]");
    if (spec.seed == 0) throw ZeroSeed("lfsr seed must be nonzero");
    if ((spec.seed >> spec.degree) != 0)
        throw Error("lfsr seed wider than register");
    if (spec.taps.empty()) throw Error("lfsr taps must be nonempty");
    for (int t : spec.taps)
        if (t < 1 || t > spec.degree)
            throw Error("lfsr tap " + std::to_string(t) + " out of range");

    SpreadingCode code;
    code.family = CodeFamily::PnMsequence;
    code.id = "pn:r=" + std::to_string(spec.degree) + ",taps=";
    for (std::size_t i = 0; i < spec.taps.size(); ++i)
        code.id += (i ? "." : "") + std::to_string(spec.taps[i]);
    code.id += ",seed=" + std::to_string(spec.seed);

    const std::size_t period = (std::size_t{1} << spec.degree) - 1;
    code.chips.resize(period);
    std::uint32_t state = spec.seed;  // bit i holds stage i+1
    for (std::size_t k = 0; k < period; ++k) {
        int out_bit = (state >> (spec.degree - 1)) & 1u;  // stage r
        std::uint32_t fb = 0;
        for (int t : spec.taps) fb ^= (state >> (t - 1)) & 1u;
        state = ((state << 1) | fb) & ((1u << spec.degree) - 1u);
        code.chips[k] = out_bit ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
    }
    return code;
}

Signal mux_users(const std::vector<Signal>& symbols_per_user,
                 const std::vector<SpreadingCode>& codes) {
    if (symbols_per_user.empty())
        throw DimensionMismatch("need at least one user");
    if (symbols_per_user.size() != codes.size())
        throw DimensionMismatch("user count != code count");
    const std::size_t n_symbols = symbols_per_user[0].size();
    const std::size_t Ls = codes[0].length();
    if (Ls == 0) throw DimensionMismatch("empty spreading code");
    for (const Signal& s : symbols_per_user)
        if (s.size() != n_symbols)
            throw DimensionMismatch("users have different symbol counts");
    for (const SpreadingCode& c : codes)
        if (c.length() != Ls)
            throw DimensionMismatch("codes have different lengths");

    Signal out;
    out.sample_rate =
        symbols_per_user[0].sample_rate * static_cast<double>(Ls);
    out.samples.assign(n_symbols * Ls, cplx{0.0, 0.0});
    for (std::size_t u = 0; u < codes.size(); ++u)
        for (std::size_t n = 0; n < n_symbols; ++n)
            for (std::size_t k = 0; k < Ls; ++k)
                out.samples[n * Ls + k] +=
                    symbols_per_user[u].samples[n] * codes[u].chips[k];
    return out;
}

Signal demux_user(const Signal& composite, const SpreadingCode& code,
                  std::size_t symbol_count) {
    const std::size_t Ls = code.length();
    if (Ls == 0 || composite.size() != symbol_count * Ls)
        throw DimensionMismatch("composite length " +
                                std::to_string(composite.size()) + " != " +
                                std::to_string(symbol_count) + " * " +
                                std::to_string(Ls));
    Signal out;
    out.sample_rate = composite.sample_rate / static_cast<double>(Ls);
    out.samples.resize(symbol_count);
    for (std::size_t n = 0; n < symbol_count; ++n) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < Ls; ++k)
            acc += composite.samples[n * Ls + k] * std::conj(code.chips[k]);
        out.samples[n] = acc / static_cast<double>(Ls);
    }
    return out;
}

cplx cross_correlation(const SpreadingCode& a, const SpreadingCode& b,
                       std::int64_t lag) {
    const std::size_t Ls = a.length();
    if (Ls == 0 || b.length() != Ls)
        throw DimensionMismatch("codes have different lengths");
    std::int64_t L = static_cast<std::int64_t>(Ls);
    std::int64_t shift = ((lag % L) + L) % L;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < Ls; ++k) {
        std::size_t j = (k + static_cast<std::size_t>(shift)) % Ls;
        acc += a.chips[k] * std::conj(b.chips[j]);
    }
    return acc / static_cast<double>(Ls);
}

}  // namespace chspread
