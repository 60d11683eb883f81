#include "chspread/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "chspread/errors.hpp"

namespace chspread {

namespace {

/// Seeded RNG with fully specified output. mt19937_64 is bit-exact per the
/// standard; the uniform/gaussian conversions are hand-rolled because the
/// std distributions are implementation-defined, which would break the
/// byte-identical-artifacts contract.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Standard complex circular Gaussian (unit variance per complex
    /// sample), Box-Muller.
    cplx gaussian_pair() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double r = std::sqrt(-std::log(u1));
        double th = 2.0 * std::numbers::pi * uniform01();
        // variance 1/2 per component -> |z|^2 has mean 1
        return {r * std::cos(th), r * std::sin(th)};
    }

private:
    std::mt19937_64 gen_;
};

double max_abs(const Signal& s) {
    double m = 0.0;
    for (const cplx& v : s.samples) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

std::pair<Signal, NoiseRecord> apply_impulse_noise(const Signal& s,
                                                   const ImpulseNoiseSpec& spec) {
    if (s.empty()) throw Error("cannot add noise to an empty signal");
    if (spec.period < 1) throw Error("impulse period must be >= 1");
    if (spec.amp_min < 0.0 || spec.amp_max < spec.amp_min)
        throw Error("need 0 <= amp_min <= amp_max");

    const double ref = max_abs(s);
    SeededRng rng(spec.seed);
    Signal out = s;
    NoiseRecord record;
    for (std::size_t start = 0; start < s.size(); start += spec.period) {
        for (std::size_t b = 0; b < spec.burst_len; ++b) {
            std::size_t idx = start + b;
            if (idx >= s.size()) break;
            double mag = rng.uniform(spec.amp_min, spec.amp_max) * ref;
            cplx impulse;
            if (spec.real_only) {
                impulse = {rng.uniform01() < 0.5 ? mag : -mag, 0.0};
            } else {
                double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
                impulse = {mag * std::cos(phase), mag * std::sin(phase)};
            }
            out.samples[idx] += impulse;
            record.positions.push_back(idx);
            record.noise_values.push_back(impulse);
        }
    }
    return {std::move(out), std::move(record)};
}

Signal apply_awgn(const Signal& s, const AwgnSpec& spec) {
    if (std::isinf(spec.snr_db) && spec.snr_db > 0) return s;  // no-noise flag
    if (!std::isfinite(spec.snr_db)) throw Error("snr_db must be finite");
    const double energy = s.energy();
    if (s.empty() || energy <= 0.0)
        throw ZeroSignalEnergy("signal has no energy, SNR undefined");

    const double signal_power = energy / static_cast<double>(s.size());
    const double noise_power = signal_power * std::pow(10.0, -spec.snr_db / 10.0);
    const double scale = std::sqrt(noise_power);
    SeededRng rng(spec.seed);
    Signal out = s;
    for (cplx& v : out.samples) v += scale * rng.gaussian_pair();
    return out;
}

std::pair<Signal, double> error_signal(const Signal& recovered,
                                       const Signal& original) {
    if (recovered.size() != original.size())
        throw DimensionMismatch("recovered length " +
                                std::to_string(recovered.size()) +
                                " != original length " +
                                std::to_string(original.size()));
    const double ref_energy = original.energy();
    if (ref_energy <= 0.0)
        throw ZeroSignalEnergy("original signal is all zeros");

    Signal diff;
    diff.sample_rate = original.sample_rate;
    diff.samples.resize(original.size());
    double err_energy = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        diff.samples[i] = recovered.samples[i] - original.samples[i];
        err_energy += std::norm(diff.samples[i]);
    }
    return {std::move(diff), err_energy / ref_energy};
}

}  // namespace chspread
