#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chspread/chrestenson.hpp"
#include "chspread/padic.hpp"
#include "chspread/signal.hpp"

namespace chspread {

/// Per-sample recovery rule applied to the de-rotated chips. Median and
/// trimmed act on real and imaginary parts independently.
struct Estimator {
    enum class Kind { Mean, Median, Trimmed };
    Kind kind = Kind::Mean;
    double alpha = 0.0;  // trim fraction per end, [0, 0.5)

    /// Parses "mean", "median" or "trimmed:ALPHA".
    static Estimator parse(std::string_view text);
    std::string to_string() const;
};

struct TemporalSpreadConfig {
    Radix radix;
    PFraction omega1;
    int chips_per_sample = 1;  // L
    Estimator estimator;

    TemporalSpreadConfig(Radix p, PFraction w1, int L, Estimator est = {});
};

/// The chip vector C(k, omega1), k = 0..L-1. chips[0] = 1.
struct ChipSequence {
    std::vector<cplx> chips;
};

ChipSequence chip_sequence(const TemporalSpreadConfig& cfg);

/// Replaces each sample with L chips: out[n*L + k] = x[n] * chips[k].
/// Output sample rate is L times the input rate.
Signal spread(const Signal& x, const TemporalSpreadConfig& cfg);

/// Recovers N samples from N*L chips: de-rotates each block by conj(chips)
/// and applies the configured estimator per sample.
Signal despread(const Signal& y, const TemporalSpreadConfig& cfg,
                std::size_t original_length);

}  // namespace chspread
