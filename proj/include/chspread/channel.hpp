#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chspread/signal.hpp"
#include "chspread/errors.hpp"


namespace chspread {

/// Periodic impulsive-noise model: bursts of `burst_len` samples starting
/// at indices 0, period, 2*period, ...; impulse magnitude is uniform in
/// [amp_min, amp_max] times max|s|, phase uniform (or a +-1 sign when
/// real_only is set).
struct ImpulseNoiseSpec {
    std::size_t period = 10;
    std::size_t burst_len = 1;
    double amp_min = 0.1;
    double amp_max = 1.0;
    std::uint64_t seed = 0;
    bool real_only = false;
};

struct AwgnSpec {
    double snr_db = 10.0;  // +infinity means no noise
    std::uint64_t seed = 0;
};

/// Every perturbation applied by a noise stage, for error plots.
struct NoiseRecord {
    std::vector<std::size_t> positions;  // strictly increasing
    std::vector<cplx> noise_values;
};

std::pair<Signal, NoiseRecord> apply_impulse_noise(const Signal& s,
                                                   const ImpulseNoiseSpec& spec);

/// Additive circular complex Gaussian noise at the requested SNR.
Signal apply_awgn(const Signal& s, const AwgnSpec& spec);

/// Elementwise difference and normalized mean-square error
/// ||recovered - original||^2 / ||original||^2.
std::pair<Signal, double> error_signal(const Signal& recovered,
                                       const Signal& original);

}  // namespace chspread
