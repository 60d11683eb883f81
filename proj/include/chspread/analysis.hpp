#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chspread/signal.hpp"
#include "chspread/errors.hpp"


namespace chspread {

/// Rectangular-window periodogram: bins[k] = |DFT(s)[k]|^2 / N, so the bin
/// sum equals the signal energy (Parseval with this convention).
struct PsdEstimate {
    std::vector<double> bins;
    double bin_resolution = 0.0;  // sample_rate / N
    std::size_t n_samples = 0;
};

PsdEstimate periodogram(const Signal& s);

/// One-sided fold: bins k and N-k are summed so energy at mirrored
/// frequencies lands on the real oscillation frequency. Used for band-edge
/// measurements against a real original.
PsdEstimate fold_onesided(const PsdEstimate& psd);

struct BandInterval {
    std::size_t low_bin = 0;
    std::size_t high_bin = 0;
    std::size_t width() const { return high_bin - low_bin + 1; }
};

/// Smallest contiguous bin interval that contains the peak bin and at
/// least energy_fraction of the total power. Ties go to the narrower,
/// lower-starting interval.
BandInterval occupied_bandwidth(const PsdEstimate& psd, double energy_fraction);

/// Geometric over arithmetic mean of the bins, in [0, 1]; 1 for flat
/// spectra. Zero bins are floored at 1e-300.
double spectral_flatness(const PsdEstimate& psd);

/// Real cosine test signal A*cos(2*pi*omega*n + phase), omega in cycles
/// per sample.
Signal tone(double amplitude, double omega, double phase,
            std::size_t n_samples, double sample_rate = 1.0);

/// Sample-repetition upsampling, the bandwidth-comparison baseline at the
/// chip rate.
Signal zero_order_hold(const Signal& x, int factor);

}  // namespace chspread
