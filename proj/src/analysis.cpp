#include "chspread/analysis.hpp"

#include <cmath>
#include <numbers>

#include "chspread/chrestenson.hpp"
#include "chspread/errors.hpp"

namespace chspread {

PsdEstimate periodogram(const Signal& s) {
    if (s.size() < 2) throw Error("periodogram needs at least 2 samples");
    Signal spectrum = dft_reference(s);
    PsdEstimate psd;
    psd.n_samples = s.size();
    psd.bin_resolution = s.sample_rate / static_cast<double>(s.size());
    psd.bins.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        psd.bins[k] = std::norm(spectrum.samples[k]) / static_cast<double>(s.size());
    return psd;
}

PsdEstimate fold_onesided(const PsdEstimate& psd) {
    const std::size_t N = psd.bins.size();
    if (N < 2) throw Error("cannot fold a PSD with fewer than 2 bins");
    const std::size_t half = N / 2;
    PsdEstimate out;
    out.n_samples = psd.n_samples;
    out.bin_resolution = psd.bin_resolution;
    out.bins.resize(half + 1);
    out.bins[0] = psd.bins[0];
    for (std::size_t k = 1; k < half; ++k)
        out.bins[k] = psd.bins[k] + psd.bins[N - k];
    if (N % 2 == 0)
        out.bins[half] = psd.bins[half];
    else
        out.bins[half] = psd.bins[half] + psd.bins[half + 1];
    return out;
}

BandInterval occupied_bandwidth(const PsdEstimate& psd, double energy_fraction) {
    if (energy_fraction <= 0.0 || energy_fraction >= 1.0)
        throw Error("energy fraction must be in (0, 1)");
    const std::size_t N = psd.bins.size();
    if (N == 0) throw ZeroSpectrum("empty PSD");

    double total = 0.0;
    std::size_t peak = 0;
    for (std::size_t k = 0; k < N; ++k) {
        total += psd.bins[k];
        if (psd.bins[k] > psd.bins[peak]) peak = k;
    }
    if (total <= 0.0) throw ZeroSpectrum("PSD has no power");

    std::vector<double> prefix(N + 1, 0.0);
    for (std::size_t k = 0; k < N; ++k) prefix[k + 1] = prefix[k] + psd.bins[k];
    const double target = energy_fraction * total - 1e-12 * total;

    for (std::size_t width = 1; width <= N; ++width) {
        std::size_t lo_min = peak + 1 >= width ? peak + 1 - width : 0;
        std::size_t lo_max = std::min(peak, N - width);
        for (std::size_t lo = lo_min; lo <= lo_max; ++lo) {
            if (prefix[lo + width] - prefix[lo] >= target)
                return {lo, lo + width - 1};
        }
    }
    return {0, N - 1};
}

double spectral_flatness(const PsdEstimate& psd) {
    const std::size_t N = psd.bins.size();
    if (N == 0) throw ZeroSpectrum("empty PSD");
    double log_sum = 0.0;
    double sum = 0.0;
    for (double b : psd.bins) {
        sum += b;
        log_sum += std::log(std::max(b, 1e-300));
    }
    if (sum <= 0.0) throw ZeroSpectrum("PSD has no power");
    double gm = std::exp(log_sum / static_cast<double>(N));
    double am = sum / static_cast<double>(N);
    return gm / am;
}

Signal tone(double amplitude, double omega, double phase,
            std::size_t n_samples, double sample_rate) {
    if (n_samples < 1) throw Error("tone needs at least 1 sample");
    Signal out;
    out.sample_rate = sample_rate;
    out.samples.resize(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        double arg = 2.0 * std::numbers::pi * omega * static_cast<double>(n) + phase;
        out.samples[n] = {amplitude * std::cos(arg), 0.0};
    }
    return out;
}

Signal zero_order_hold(const Signal& x, int factor) {
    if (factor < 1) throw Error("hold factor must be >= 1");
    Signal out;
    out.sample_rate = x.sample_rate * factor;
    out.samples.reserve(x.size() * static_cast<std::size_t>(factor));
    for (const cplx& v : x.samples)
        for (int i = 0; i < factor; ++i) out.samples.push_back(v);
    return out;
}

}  // namespace chspread
