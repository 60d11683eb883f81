// chspread: Chrestenson spread-spectrum experiment tool.
//
// Subcommands: transform, spread, despread, channel, codes, spectrum, run.
// Exit codes: 0 success, 2 config error, 3 I/O error, 4 numeric/domain error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chspread/analysis.hpp"
#include "chspread/channel.hpp"
#include "chspread/chrestenson.hpp"
#include "chspread/errors.hpp"
#include "chspread/io.hpp"
#include "chspread/pipeline.hpp"
#include "chspread/spatial_spread.hpp"
#include "chspread/temporal_spread.hpp"

namespace fs = std::filesystem;
using namespace chspread;

namespace {

struct CommonOpts {
    std::string input;
    std::string output;
    int p = 8;
    std::string omega1 = "3/8";
    int chips = 16;
    std::string estimator = "mean";
    std::uint64_t seed = 0;
};

Signal read_input(const std::string& input) { return resolve_input(input); }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_transform(const std::string& input, const std::string& output, int p,
                  bool inverse) {
    Signal x = read_input(input);
    Signal y = inverse ? dcht_inverse(x, Radix(p)) : dcht_forward(x, Radix(p));
    save_signal(y, output);
    std::printf("%s DCHT: %zu samples, p=%d -> %s\n",
                inverse ? "inverse" : "forward", x.size(), p, output.c_str());
    return 0;
}

int cmd_spread(const CommonOpts& o) {
    Signal x = read_input(o.input);
    TemporalSpreadConfig cfg(Radix(o.p), PFraction::parse(o.omega1), o.chips,
                             Estimator::parse(o.estimator));
    Signal y = spread(x, cfg);
    save_signal(y, o.output);
    std::printf("spread %zu samples -> %zu chips (p=%d, omega1=%s, L=%d)\n",
                x.size(), y.size(), o.p, o.omega1.c_str(), o.chips);
    return 0;
}

int cmd_despread(const CommonOpts& o, std::size_t original_length) {
    Signal y = read_input(o.input);
    TemporalSpreadConfig cfg(Radix(o.p), PFraction::parse(o.omega1), o.chips,
                             Estimator::parse(o.estimator));
    if (original_length == 0) {
        if (y.size() % static_cast<std::size_t>(o.chips) != 0)
            throw LengthMismatch("chip count not a multiple of L; pass --length");
        original_length = y.size() / static_cast<std::size_t>(o.chips);
    }
    Signal x = despread(y, cfg, original_length);
    save_signal(x, o.output);
    std::printf("despread %zu chips -> %zu samples (%s estimator)\n", y.size(),
                x.size(), cfg.estimator.to_string().c_str());
    return 0;
}

int cmd_channel(const CommonOpts& o, const std::string& kind,
                std::size_t period, std::size_t burst, double amp_min,
                double amp_max, double snr_db, const std::string& record_path) {
    Signal s = read_input(o.input);
    if (kind == "impulse") {
        ImpulseNoiseSpec spec;
        spec.period = period;
        spec.burst_len = burst;
        spec.amp_min = amp_min;
        spec.amp_max = amp_max;
        spec.seed = o.seed;
        auto [noisy, record] = apply_impulse_noise(s, spec);
        save_signal(noisy, o.output);
        if (!record_path.empty()) {
            std::ofstream nr(record_path, std::ios::binary);
            if (!nr) throw IoError("cannot write " + record_path);
            nr << "position,re,im\n";
            for (std::size_t j = 0; j < record.positions.size(); ++j)
                nr << record.positions[j] << ','
                   << format_double(record.noise_values[j].real()) << ','
                   << format_double(record.noise_values[j].imag()) << '\n';
        }
        std::printf("impulse noise: %zu perturbations -> %s\n",
                    record.positions.size(), o.output.c_str());
    } else if (kind == "awgn") {
        Signal noisy = apply_awgn(s, AwgnSpec{snr_db, o.seed});
        save_signal(noisy, o.output);
        std::printf("awgn at %g dB -> %s\n", snr_db, o.output.c_str());
    } else {
        throw ConfigError("unknown channel kind '" + kind + "'");
    }
    return 0;
}

int cmd_codes(const std::string& family, int p, int m, const std::string& rows,
              int degree, const std::string& taps, std::uint32_t lfsr_seed,
              const std::string& out_dir) {
    std::vector<SpreadingCode> codes;
    if (family == "walsh" || family == "ch") {
        std::vector<std::size_t> row_list;
        if (rows.empty()) {
            std::size_t n = 1;
            for (int i = 0; i < m; ++i)
                n *= static_cast<std::size_t>(family == "walsh" ? 2 : p);
            for (std::size_t r = 0; r < n; ++r) row_list.push_back(r);
        } else {
            for (const auto& tok : split_list(rows))
                row_list.push_back(static_cast<std::size_t>(std::stoull(tok)));
        }
        for (std::size_t r : row_list)
            codes.push_back(family == "walsh" ? walsh_code(m, r)
                                              : ch_code(Radix(p), m, r));
    } else if (family == "pn") {
        LfsrSpec spec;
        spec.degree = degree;
        spec.seed = lfsr_seed;
        if (!taps.empty()) {
            for (const auto& tok : split_list(taps))
                spec.taps.push_back(std::stoi(tok));
        } else {
            // mirror the pipeline defaults for common register sizes
            const std::vector<std::vector<int>> table = {
                {}, {}, {2, 1}, {3, 2}, {4, 3}, {5, 3}, {6, 5}, {7, 6},
                {8, 6, 5, 4}, {9, 5}, {10, 7}, {11, 9}, {12, 11, 10, 4}};
            if (degree < 2 || degree >= static_cast<int>(table.size()))
                throw ConfigError("no default taps for degree " +
                                  std::to_string(degree));
            spec.taps = table[static_cast<std::size_t>(degree)];
        }
        codes.push_back(pn_msequence(spec));
    } else {
        throw ConfigError("unknown code family '" + family + "'");
    }

    fs::create_directories(out_dir);
    write_codes_report(codes, fs::path(out_dir) / "codes.csv",
                       fs::path(out_dir) / "correlations.csv");
    std::printf("%zu code(s) of length %zu -> %s/{codes,correlations}.csv\n",
                codes.size(), codes.front().length(), out_dir.c_str());
    return 0;
}

int cmd_spectrum(const std::string& input, const std::string& output,
                 std::size_t window, double fraction) {
    Signal s = read_input(input);
    std::size_t n = window == 0 ? s.size() : std::min(window, s.size());
    Signal head;
    head.sample_rate = s.sample_rate;
    head.samples.assign(s.samples.begin(), s.samples.begin() + n);
    PsdEstimate psd = periodogram(head);
    save_psd(psd, output);
    PsdEstimate folded = fold_onesided(psd);
    BandInterval band = occupied_bandwidth(folded, fraction);
    std::printf("window = %zu\n", n);
    std::printf("flatness = %s\n", format_double(spectral_flatness(psd)).c_str());
    std::printf("obw%.0f_low_bin = %zu\n", fraction * 100, band.low_bin);
    std::printf("obw%.0f_high_bin = %zu\n", fraction * 100, band.high_bin);
    std::printf("obw%.0f_low_cycles = %s\n", fraction * 100,
                format_double(static_cast<double>(band.low_bin) /
                              static_cast<double>(n)).c_str());
    std::printf("obw%.0f_high_cycles = %s\n", fraction * 100,
                format_double(static_cast<double>(band.high_bin) /
                              static_cast<double>(n)).c_str());
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::pair<std::string, std::string>>& overrides) {
    ConfigMap cfg = ConfigMap::parse_file(config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    RunConfig rc = RunConfig::from_config(cfg);
    ExperimentReport report = run_pipeline(rc, out_dir);
    std::fputs(report.to_text().c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chrestenson spatial-temporal spreading toolbox"};
    app.require_subcommand(1);

    CommonOpts o;
    bool inverse = false;
    std::size_t original_length = 0;
    std::string channel_kind = "impulse";
    std::size_t period = 10, burst = 1;
    double amp_min = 0.1, amp_max = 1.0, snr_db = 10.0;
    std::string record_path;
    std::string family = "walsh", rows, taps;
    int m = 2, degree = 3;
    std::uint32_t lfsr_seed = 1;
    std::size_t window = 0;
    double fraction = 0.99;
    std::string config_path, out_dir = "out";

    auto* transform = app.add_subcommand("transform", "DCHT forward/inverse");
    transform->add_option("--in", o.input, "input CSV/WAV or tone:...")->required();
    transform->add_option("--out", o.output, "output CSV")->required();
    transform->add_option("--p", o.p, "radix");
    transform->add_flag("--inverse", inverse, "apply the inverse transform");

    auto* sp = app.add_subcommand("spread", "temporal spreading");
    sp->add_option("--in", o.input)->required();
    sp->add_option("--out", o.output)->required();
    sp->add_option("--p", o.p);
    sp->add_option("--omega1", o.omega1, "chip frequency K/p^m");
    sp->add_option("--chips", o.chips, "chips per sample L");

    auto* dsp = app.add_subcommand("despread", "temporal despreading");
    dsp->add_option("--in", o.input)->required();
    dsp->add_option("--out", o.output)->required();
    dsp->add_option("--p", o.p);
    dsp->add_option("--omega1", o.omega1);
    dsp->add_option("--chips", o.chips);
    dsp->add_option("--estimator", o.estimator, "mean|median|trimmed:ALPHA");
    dsp->add_option("--length", original_length, "original sample count");

    auto* ch = app.add_subcommand("channel", "apply channel noise");
    ch->add_option("--in", o.input)->required();
    ch->add_option("--out", o.output)->required();
    ch->add_option("--kind", channel_kind, "impulse|awgn");
    ch->add_option("--period", period);
    ch->add_option("--burst", burst);
    ch->add_option("--amp-min", amp_min);
    ch->add_option("--amp-max", amp_max);
    ch->add_option("--snr-db", snr_db);
    ch->add_option("--seed", o.seed);
    ch->add_option("--record", record_path, "noise record CSV");

    auto* codes = app.add_subcommand("codes", "emit spreading codes and MAI table");
    codes->add_option("--family", family, "walsh|ch|pn")->required();
    codes->add_option("--p", o.p);
    codes->add_option("--m", m);
    codes->add_option("--rows", rows, "comma-separated row indices");
    codes->add_option("--degree", degree, "LFSR register size");
    codes->add_option("--taps", taps, "comma-separated LFSR taps");
    codes->add_option("--lfsr-seed", lfsr_seed);
    codes->add_option("--out", out_dir);

    auto* spec = app.add_subcommand("spectrum", "periodogram and band metrics");
    spec->add_option("--in", o.input)->required();
    spec->add_option("--out", o.output)->required();
    spec->add_option("--window", window, "PSD window (0 = whole signal)");
    spec->add_option("--fraction", fraction, "occupied-band energy fraction");

    auto* run = app.add_subcommand("run", "run a configured pipeline");
    run->add_option("--config", config_path)->required();
    run->add_option("--out", out_dir);
    std::string ov_seed, ov_p, ov_omega1, ov_chips, ov_estimator;
    run->add_option("--seed", ov_seed);
    run->add_option("--p", ov_p);
    run->add_option("--omega1", ov_omega1);
    run->add_option("--chips", ov_chips);
    run->add_option("--estimator", ov_estimator);

    CLI11_PARSE(app, argc, argv);

    try {
        if (transform->parsed())
            return cmd_transform(o.input, o.output, o.p, inverse);
        if (sp->parsed()) return cmd_spread(o);
        if (dsp->parsed()) return cmd_despread(o, original_length);
        if (ch->parsed())
            return cmd_channel(o, channel_kind, period, burst, amp_min,
                               amp_max, snr_db, record_path);
        if (codes->parsed())
            return cmd_codes(family, o.p, m, rows, degree, taps, lfsr_seed,
                             out_dir);
        if (spec->parsed())
            return cmd_spectrum(o.input, o.output, window, fraction);
        if (run->parsed()) {
            std::vector<std::pair<std::string, std::string>> overrides;
            if (!ov_seed.empty()) overrides.emplace_back("seed", ov_seed);
            if (!ov_p.empty()) overrides.emplace_back("temporal_spread.p", ov_p);
            if (!ov_omega1.empty())
                overrides.emplace_back("temporal_spread.omega1", ov_omega1);
            if (!ov_chips.empty())
                overrides.emplace_back("temporal_spread.chips", ov_chips);
            if (!ov_estimator.empty())
                overrides.emplace_back("temporal_spread.estimator", ov_estimator);
            return cmd_run(config_path, out_dir, overrides);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 3;
    } catch (const UnsupportedFormat& e) {
        std::fprintf(stderr, "unsupported format: %s\n", e.what());
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
