#include "chspread/temporal_spread.hpp"

#include <algorithm>
#include <charconv>

#include "chspread/errors.hpp"

namespace chspread {

Estimator Estimator::parse(std::string_view text) {
    if (text == "mean") return {Kind::Mean, 0.0};
    if (text == "median") return {Kind::Median, 0.0};
    if (text.rfind("trimmed:", 0) == 0) {
        std::string_view num = text.substr(8);
        double alpha = 0.0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), alpha);
        if (ec != std::errc{} || ptr != num.data() + num.size())
            throw Error("bad trim fraction: '" + std::string(num) + "'");
        if (alpha < 0.0 || alpha >= 0.5)
            throw Error("trim fraction must be in [0, 0.5)");
        return {Kind::Trimmed, alpha};
    }
    throw Error("unknown estimator '" + std::string(text) +
                "' (expected mean, median or trimmed:ALPHA)");
}

std::string Estimator::to_string() const {
    switch (kind) {
        case Kind::Mean: return "mean";
        case Kind::Median: return "median";
        case Kind::Trimmed: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "trimmed:%g", alpha);
            return buf;
        }
    }
    return "mean";
}

TemporalSpreadConfig::TemporalSpreadConfig(Radix p, PFraction w1, int L,
                                           Estimator est)
    : radix(p), omega1(w1), chips_per_sample(L), estimator(est) {
    if (L < 1) throw Error("chips_per_sample must be >= 1");
    if (w1.radix_p != p.p)
        throw RadixMismatch("omega1 radix does not match spreading radix");
    if (est.kind == Estimator::Kind::Trimmed &&
        (est.alpha < 0.0 || est.alpha >= 0.5))
        throw Error("trim fraction must be in [0, 0.5)");
}

ChipSequence chip_sequence(const TemporalSpreadConfig& cfg) {
    ChipSequence seq;
    seq.chips.resize(cfg.chips_per_sample);
    for (int k = 0; k < cfg.chips_per_sample; ++k)
        seq.chips[k] = kernel(static_cast<std::uint64_t>(k), cfg.omega1);
    return seq;
}

Signal spread(const Signal& x, const TemporalSpreadConfig& cfg) {
    if (x.empty()) throw Error("cannot spread an empty signal");
    const auto chips = chip_sequence(cfg).chips;
    const std::size_t L = chips.size();
    Signal out;
    out.sample_rate = x.sample_rate * static_cast<double>(L);
    out.samples.resize(x.size() * L);
    for (std::size_t n = 0; n < x.size(); ++n)
        for (std::size_t k = 0; k < L; ++k)
            out.samples[n * L + k] = x.samples[n] * chips[k];
    return out;
}

namespace {

/// Estimate applied independently to the real and imaginary parts.
double estimate_component(std::vector<double>& v, const Estimator& est) {
    if (est.kind == Estimator::Kind::Mean) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    }
    std::sort(v.begin(), v.end());
    const std::size_t L = v.size();
    if (est.kind == Estimator::Kind::Median) {
        if (L % 2 == 1) return v[L / 2];
        return 0.5 * (v[L / 2 - 1] + v[L / 2]);
    }
    // trimmed: drop floor(alpha*L) from each end
    std::size_t drop = static_cast<std::size_t>(est.alpha * static_cast<double>(L));
    double sum = 0.0;
    for (std::size_t i = drop; i < L - drop; ++i) sum += v[i];
    return sum / static_cast<double>(L - 2 * drop);
}

}  // namespace

Signal despread(const Signal& y, const TemporalSpreadConfig& cfg,
                std::size_t original_length) {
    const auto chips = chip_sequence(cfg).chips;
    const std::size_t L = chips.size();
    if (y.size() != original_length * L)
        throw LengthMismatch("spread length " + std::to_string(y.size()) +
                             " != " + std::to_string(original_length) + " * " +
                             std::to_string(L));
    Signal out;
    out.sample_rate = y.sample_rate / static_cast<double>(L);
    out.samples.resize(original_length);
    std::vector<double> re(L), im(L);
    for (std::size_t n = 0; n < original_length; ++n) {
        for (std::size_t k = 0; k < L; ++k) {
            cplx z = y.samples[n * L + k] * std::conj(chips[k]);
            re[k] = z.real();
            im[k] = z.imag();
        }
        out.samples[n] = {estimate_component(re, cfg.estimator),
                          estimate_component(im, cfg.estimator)};
    }
    return out;
}

}  // namespace chspread
