#include <doctest.h>

#include <random>

#include "chspread/analysis.hpp"
#include "chspread/temporal_spread.hpp"
#include "oracles.hpp"

using namespace chspread;

namespace {

Signal random_signal(std::size_t n, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Signal s;
    s.samples.resize(n);
    for (auto& v : s.samples) v = {dist(gen), dist(gen)};
    return s;
}

}  // namespace

TEST_CASE("estimator parsing") {
    CHECK(Estimator::parse("mean").kind == Estimator::Kind::Mean);
    CHECK(Estimator::parse("median").kind == Estimator::Kind::Median);
    auto t = Estimator::parse("trimmed:0.25");
    CHECK(t.kind == Estimator::Kind::Trimmed);
    CHECK(t.alpha == doctest::Approx(0.25));
    CHECK_THROWS_AS(Estimator::parse("trimmed:0.5"), Error);
    CHECK_THROWS_AS(Estimator::parse("mode"), Error);
}

TEST_CASE("chip sequence examples") {
    TemporalSpreadConfig a(Radix(2), PFraction(1, 2, 1), 4);
    auto ca = chip_sequence(a).chips;
    CHECK(ca == std::vector<cplx>{{1, 0}, {-1, 0}, {1, 0}, {-1, 0}});

    TemporalSpreadConfig b(Radix(2), PFraction(3, 2, 2), 4);
    auto cb = chip_sequence(b).chips;
    CHECK(cb == std::vector<cplx>{{1, 0}, {-1, 0}, {-1, 0}, {1, 0}});

    TemporalSpreadConfig c(Radix(5), PFraction(0, 5, 1), 3);
    auto cc = chip_sequence(c).chips;
    CHECK(cc == std::vector<cplx>{{1, 0}, {1, 0}, {1, 0}});
}

TEST_CASE("chips agree with the brute-force kernel and start at 1") {
    for (int p : {2, 3, 8}) {
        for (std::int64_t K = 0; K < p; ++K) {
            TemporalSpreadConfig cfg(Radix(p), PFraction(K, p, 1), 12);
            auto chips = chip_sequence(cfg).chips;
            CHECK(chips[0] == cplx{1.0, 0.0});
            for (std::size_t k = 0; k < chips.size(); ++k)
                CHECK(std::abs(chips[k] -
                               oracle::kernel_bruteforce(K, p, 1, k)) < 1e-15);
        }
    }
}

TEST_CASE("spread layout, rate and energy") {
    Signal x;
    x.samples = {cplx{1, 0}, {-1, 0}};
    x.sample_rate = 100.0;
    TemporalSpreadConfig cfg(Radix(2), PFraction(1, 2, 1), 2);
    Signal y = spread(x, cfg);
    CHECK(y.samples == std::vector<cplx>{{1, 0}, {-1, 0}, {-1, 0}, {1, 0}});
    CHECK(y.sample_rate == doctest::Approx(200.0));

    Signal z;
    z.samples = {cplx{2, 0}};
    Signal zs = spread(z, TemporalSpreadConfig(Radix(2), PFraction(3, 2, 2), 4));
    CHECK(zs.samples == std::vector<cplx>{{2, 0}, {-2, 0}, {-2, 0}, {2, 0}});

    // L = 1 is the identity
    Signal w = random_signal(5, 3);
    Signal ws = spread(w, TemporalSpreadConfig(Radix(2), PFraction(1, 2, 1), 1));
    CHECK(ws.samples == w.samples);

    // unit-modulus chips scale energy by exactly L
    Signal r = random_signal(64, 9);
    for (int L : {2, 5, 16}) {
        Signal rs = spread(r, TemporalSpreadConfig(Radix(8), PFraction(3, 8, 1), L));
        CHECK(rs.size() == r.size() * static_cast<std::size_t>(L));
        CHECK(rs.energy() ==
              doctest::Approx(static_cast<double>(L) * r.energy())
                  .epsilon(1e-12));
    }
}

TEST_CASE("noiseless despread recovers the signal exactly") {
    std::uint32_t seed = 21;
    for (auto est : {Estimator::parse("mean"), Estimator::parse("median"),
                     Estimator::parse("trimmed:0.2")}) {
        for (auto [p, K, m, L] :
             {std::tuple{2, 1, 1, 4}, {3, 2, 1, 5}, {8, 3, 1, 16},
              {8, 11, 2, 7}, {4, 3, 1, 1}}) {
            Signal x = random_signal(24, seed++);
            TemporalSpreadConfig cfg(Radix(p), PFraction(K, p, m), L, est);
            Signal back = despread(spread(x, cfg), cfg, x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                CHECK(std::abs(back.samples[i] - x.samples[i]) < 1e-12);
        }
    }
}

TEST_CASE("despread rejects a length mismatch") {
    TemporalSpreadConfig cfg(Radix(2), PFraction(1, 2, 1), 4);
    Signal y = random_signal(10, 1);
    CHECK_THROWS_AS(despread(y, cfg, 3), LengthMismatch);
}

TEST_CASE("single corrupted chip: mean shifts, median holds") {
    // de-rotated chips become {1, 0.2, 1, 1}
    TemporalSpreadConfig mean_cfg(Radix(2), PFraction(1, 2, 1), 4,
                                  Estimator::parse("mean"));
    TemporalSpreadConfig med_cfg(Radix(2), PFraction(1, 2, 1), 4,
                                 Estimator::parse("median"));
    Signal x;
    x.samples = {cplx{1, 0}};
    Signal y = spread(x, mean_cfg);
    y.samples[1] += 0.8;
    CHECK(despread(y, mean_cfg, 1).samples[0].real() == doctest::Approx(0.8));
    CHECK(despread(y, med_cfg, 1).samples[0].real() == doctest::Approx(1.0));
}

TEST_CASE("single-outlier robustness over every chip position") {
    TemporalSpreadConfig base(Radix(8), PFraction(5, 8, 1), 8);
    Signal x = random_signal(6, 77);
    Signal clean = spread(x, base);
    const double delta = 2.5;
    for (std::size_t pos = 0; pos < clean.size(); ++pos) {
        Signal y = clean;
        y.samples[pos] += cplx{delta * 0.6, -delta * 0.8};
        std::size_t n = pos / 8;

        TemporalSpreadConfig mean_cfg = base;
        mean_cfg.estimator = Estimator::parse("mean");
        Signal rm = despread(y, mean_cfg, x.size());
        CHECK(std::abs(rm.samples[n] - x.samples[n]) <= delta / 8.0 + 1e-12);

        TemporalSpreadConfig med_cfg = base;
        med_cfg.estimator = Estimator::parse("median");
        Signal rd = despread(y, med_cfg, x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(rd.samples[i] - x.samples[i]) < 1e-12);
    }
}

TEST_CASE("trimmed estimator matches the direct sort-and-trim oracle") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    TemporalSpreadConfig cfg(Radix(8), PFraction(3, 8, 1), 16,
                             Estimator::parse("trimmed:0.25"));
    Signal x = random_signal(10, 31);
    Signal y = spread(x, cfg);
    for (auto& v : y.samples) v += cplx{dist(gen), dist(gen)};

    Signal got = despread(y, cfg, x.size());
    auto chips = chip_sequence(cfg).chips;
    for (std::size_t n = 0; n < x.size(); ++n) {
        std::vector<double> re(16), im(16);
        for (std::size_t k = 0; k < 16; ++k) {
            cplx z = y.samples[n * 16 + k] * std::conj(chips[k]);
            re[k] = z.real();
            im[k] = z.imag();
        }
        cplx expect{oracle::trimmed_mean(re, 0.25),
                    oracle::trimmed_mean(im, 0.25)};
        CHECK(std::abs(got.samples[n] - expect) < 1e-14);
    }
}

TEST_CASE("spread tone widens the occupied band by omega1") {
    // bin-exact tone at the chip rate keeps the edges leakage-free
    Signal x = tone(1.0, 4.0 / 128.0, 0.0, 128);
    const int L = 8;
    Signal held = zero_order_hold(x, L);
    auto zoh_band = occupied_bandwidth(fold_onesided(periodogram(held)), 0.99);

    std::size_t n_chips = x.size() * static_cast<std::size_t>(L);
    std::size_t prev_high = 0;
    for (std::int64_t K : {1, 2, 3}) {
        TemporalSpreadConfig cfg(Radix(8), PFraction(K, 8, 1), L);
        Signal y = spread(x, cfg);
        auto band = occupied_bandwidth(fold_onesided(periodogram(y)), 0.99);
        CHECK(band.width() > zoh_band.width());
        CHECK(band.high_bin >= prev_high);
        prev_high = band.high_bin;

        // upper edge sits omega1 above the baseline edge, within 2 bins
        double omega_bins = static_cast<double>(K) / 8.0 *
                            static_cast<double>(n_chips);
        double shift = static_cast<double>(band.high_bin) -
                       static_cast<double>(zoh_band.high_bin);
        CHECK(std::abs(shift - omega_bins) <= 2.0);
    }
}
