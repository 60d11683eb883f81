#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace chspread {

using cplx = std::complex<double>;

/// Finite sequence of complex samples with a nominal sample rate.
/// The rate is informational; all spectral math works in normalized
/// cycles per sample.
struct Signal {
    std::vector<cplx> samples;
    double sample_rate = 1.0;

    Signal() = default;
    explicit Signal(std::vector<cplx> s, double rate = 1.0)
        : samples(std::move(s)), sample_rate(rate) {}

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    cplx& operator[](std::size_t i) { return samples[i]; }
    const cplx& operator[](std::size_t i) const { return samples[i]; }

    /// Sum of |s[n]|^2.
    double energy() const {
        double e = 0.0;
        for (const cplx& v : samples) e += std::norm(v);
        return e;
    }
};

}  // namespace chspread
