#include <doctest.h>

#include <random>

#include "chspread/spatial_spread.hpp"
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

TEST_CASE("walsh code examples") {
    CHECK(walsh_code(1, 0).chips == std::vector<cplx>{{1, 0}, {1, 0}});
    CHECK(walsh_code(1, 1).chips == std::vector<cplx>{{1, 0}, {-1, 0}});
    CHECK(walsh_code(2, 1).chips ==
          std::vector<cplx>{{1, 0}, {1, 0}, {-1, 0}, {-1, 0}});
    CHECK_THROWS_AS(walsh_code(2, 4), RowOutOfRange);
}

TEST_CASE("walsh chips are exactly +-1") {
    for (std::size_t row = 0; row < 8; ++row)
        for (const cplx& c : walsh_code(3, row).chips)
            CHECK((c == cplx{1, 0} || c == cplx{-1, 0}));
}

TEST_CASE("ch code examples") {
    auto c0 = ch_code(Radix(3), 1, 0);
    CHECK(c0.chips == std::vector<cplx>{{1, 0}, {1, 0}, {1, 0}});

    auto c1 = ch_code(Radix(3), 1, 1);
    cplx w = std::polar(1.0, -2.0 * std::numbers::pi / 3.0);
    CHECK(std::abs(c1.chips[0] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(c1.chips[1] - w) < 1e-15);
    CHECK(std::abs(c1.chips[2] - w * w) < 1e-15);

    auto c2 = ch_code(Radix(3), 1, 2);
    CHECK(std::abs(cross_correlation(c1, c2, 0)) < 1e-12);
    CHECK_THROWS_AS(ch_code(Radix(3), 1, 3), RowOutOfRange);
}

TEST_CASE("walsh and ch rows of equal size are pairwise orthogonal") {
    for (int m = 1; m <= 3; ++m) {
        std::size_t n = std::size_t{1} << m;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                CHECK(std::abs(cross_correlation(walsh_code(m, i),
                                                 walsh_code(m, j), 0)) < 1e-12);
    }
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j)
            CHECK(std::abs(cross_correlation(ch_code(Radix(3), 2, i),
                                             ch_code(Radix(3), 2, j), 0)) <
                  1e-12);
}

TEST_CASE("pn m-sequence examples") {
    auto pn3 = pn_msequence({3, {3, 2}, 0b001});
    CHECK(pn3.chips.size() == 7);
    int plus = 0, minus = 0;
    for (const cplx& c : pn3.chips) {
        CHECK((c == cplx{1, 0} || c == cplx{-1, 0}));
        (c.real() > 0 ? plus : minus)++;
    }
    CHECK(std::abs(plus - minus) == 1);

    // matches the bit-vector simulation oracle
    auto bits = oracle::lfsr_bits(3, {3, 2}, 0b001, 14);
    for (std::size_t k = 0; k < 7; ++k)
        CHECK(pn3.chips[k].real() == doctest::Approx(1.0 - 2.0 * bits[k]));
    // period 7: the second register pass repeats the first
    for (std::size_t k = 0; k < 7; ++k) CHECK(bits[k] == bits[k + 7]);

    auto pn2 = pn_msequence({2, {2, 1}, 0b01});
    CHECK(pn2.chips.size() == 3);
    int ones = 0;
    for (const cplx& c : pn2.chips) ones += c.real() < 0 ? 1 : 0;
    CHECK(ones == 2);

    LfsrSpec zero_seed{3, {3, 2}, 0};
    CHECK_THROWS_AS(pn_msequence(zero_seed), ZeroSeed);
}

TEST_CASE("m-sequence autocorrelation is two-valued") {
    for (auto [r, taps] : {std::pair<int, std::vector<int>>{2, {2, 1}},
                           {3, {3, 2}},
                           {4, {4, 3}}}) {
        auto code = pn_msequence({r, taps, 1});
        std::size_t L = code.length();
        CHECK(std::abs(cross_correlation(code, code, 0) - cplx{1, 0}) < 1e-15);
        for (std::size_t lag = 1; lag < L; ++lag) {
            // +-1 chips: the correlation sum is an exact small integer
            double sum = std::real(cross_correlation(
                             code, code, static_cast<std::int64_t>(lag))) *
                         static_cast<double>(L);
            CHECK(sum == doctest::Approx(-1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mux examples") {
    Signal a;
    a.samples = {cplx{2, 0}};
    Signal b;
    b.samples = {cplx{3, 0}};
    auto composite = mux_users({a, b}, {walsh_code(1, 0), walsh_code(1, 1)});
    CHECK(composite.samples == std::vector<cplx>{{5, 0}, {-1, 0}});

    // single user with the length-1 all-ones walsh row passes through
    Signal x = random_signal(6, 3);
    auto single = mux_users({x}, {walsh_code(1, 0)});
    CHECK(single.size() == 12);

    // identical codes sum the users
    auto same = mux_users({a, b}, {walsh_code(1, 1), walsh_code(1, 1)});
    CHECK(same.samples == std::vector<cplx>{{5, 0}, {-5, 0}});
}

TEST_CASE("demux examples") {
    Signal composite;
    composite.samples = {cplx{5, 0}, {-1, 0}};
    CHECK(demux_user(composite, walsh_code(1, 0), 1).samples[0] == cplx{2, 0});
    CHECK(demux_user(composite, walsh_code(1, 1), 1).samples[0] == cplx{3, 0});
    CHECK_THROWS_AS(demux_user(composite, walsh_code(2, 0), 1),
                    DimensionMismatch);
}

TEST_CASE("mux dimension checks") {
    Signal a = random_signal(4, 1);
    Signal b = random_signal(5, 2);
    std::vector<Signal> uneven{a, b};
    std::vector<Signal> single{a};
    std::vector<SpreadingCode> two_codes{walsh_code(1, 0), walsh_code(1, 1)};
    CHECK_THROWS_AS(mux_users(uneven, two_codes), DimensionMismatch);
    CHECK_THROWS_AS(mux_users(single, two_codes), DimensionMismatch);
    std::vector<Signal> no_users;
    std::vector<SpreadingCode> no_codes;
    CHECK_THROWS_AS(mux_users(no_users, no_codes), DimensionMismatch);
}

TEST_CASE("orthogonal codes separate a full house of users exactly") {
    std::uint32_t seed = 50;
    for (auto [p, m] : {std::pair{2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
        std::size_t n = 1;
        for (int i = 0; i < m; ++i) n *= static_cast<std::size_t>(p);
        std::vector<Signal> users;
        std::vector<SpreadingCode> codes;
        for (std::size_t u = 0; u < n; ++u) {
            users.push_back(random_signal(7, seed++));
            codes.push_back(p == 2 ? walsh_code(m, u) : ch_code(Radix(p), m, u));
        }
        Signal composite = mux_users(users, codes);
        for (std::size_t u = 0; u < n; ++u) {
            Signal est = demux_user(composite, codes[u], 7);
            for (std::size_t i = 0; i < 7; ++i)
                CHECK(std::abs(est.samples[i] - users[u].samples[i]) < 1e-12);
        }
    }
}

TEST_CASE("mux is linear") {
    Signal a = random_signal(5, 8);
    Signal b = random_signal(5, 9);
    Signal sum;
    sum.samples.resize(5);
    for (std::size_t i = 0; i < 5; ++i)
        sum.samples[i] = a.samples[i] + b.samples[i];
    std::vector<SpreadingCode> codes{walsh_code(2, 1)};
    Signal lhs = mux_users({sum}, codes);
    Signal ra = mux_users({a}, codes);
    Signal rb = mux_users({b}, codes);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        CHECK(std::abs(lhs.samples[i] - (ra.samples[i] + rb.samples[i])) <
              1e-12);
}

TEST_CASE("cross-correlation basics") {
    auto c = ch_code(Radix(3), 2, 4);
    CHECK(std::abs(cross_correlation(c, c, 0) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(cross_correlation(walsh_code(2, 1), walsh_code(2, 2), 0)) <
          1e-12);
    // lag wraps cyclically, negative lags too
    auto pn = pn_msequence({3, {3, 2}, 1});
    CHECK(std::abs(cross_correlation(pn, pn, 3) -
                   cross_correlation(pn, pn, 3 - 7)) < 1e-15);
    CHECK_THROWS_AS(cross_correlation(walsh_code(1, 0), walsh_code(2, 0), 0),
                    DimensionMismatch);
}
