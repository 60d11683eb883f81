#include "chspread/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chspread/analysis.hpp"
#include "chspread/channel.hpp"
#include "chspread/errors.hpp"
#include "chspread/io.hpp"
#include "chspread/temporal_spread.hpp"

namespace chspread {

const char* kToolVersion = "chspread 1.0.0";

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

}  // namespace

ConfigMap ConfigMap::parse_text(const std::string& text) {
    ConfigMap cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t[0] == '[') {
            auto close = t.find(']');
            if (close == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(t.substr(1, close - 1));
            if (!valid_key(section))
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": bad section name '" + section + "'");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string raw = trim(t.substr(eq + 1));
        if (!valid_key(key))
            throw ConfigError("line " + std::to_string(line_no) +
                              ": bad key '" + key + "'");
        std::string value;
        if (!raw.empty() && raw[0] == '"') {
            auto close = raw.find('"', 1);
            if (close == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unterminated string");
            std::string rest = trim(raw.substr(close + 1));
            if (!rest.empty() && rest[0] != '#')
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": trailing content after string");
            value = raw.substr(1, close - 1);
        } else {
            auto hash = raw.find('#');
            value = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (value.empty())
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": empty value for '" + key + "'");
        }
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

bool ConfigMap::has(const std::string& key) const {
    return values_.count(key) != 0;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t ConfigMap::get_int(const std::string& key,
                                std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::int64_t v = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("key '" + key + "': not an integer: '" + s + "'");
    return v;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    double v = 0.0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("key '" + key + "': not a number: '" + s + "'");
    return v;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false");
}

std::string ConfigMap::require_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

std::int64_t ConfigMap::require_int(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + key + "'");
    return get_int(key, 0);
}

const char* stage_name(StageKind kind) {
    switch (kind) {
        case StageKind::TemporalSpread: return "temporal_spread";
        case StageKind::SpatialSpread: return "spatial_spread";
        case StageKind::ImpulseNoise: return "impulse_noise";
        case StageKind::Awgn: return "awgn";
        case StageKind::Despread: return "despread";
        case StageKind::Demux: return "demux";
    }
    return "?";
}

namespace {

StageKind parse_stage(const std::string& name) {
    for (StageKind k :
         {StageKind::TemporalSpread, StageKind::SpatialSpread,
          StageKind::ImpulseNoise, StageKind::Awgn, StageKind::Despread,
          StageKind::Demux})
        if (name == stage_name(k)) return k;
    throw ConfigError("unknown pipeline stage '" + name + "'");
}

bool is_transmit(StageKind k) {
    return k == StageKind::TemporalSpread || k == StageKind::SpatialSpread;
}
bool is_noise(StageKind k) {
    return k == StageKind::ImpulseNoise || k == StageKind::Awgn;
}
bool is_receive(StageKind k) {
    return k == StageKind::Despread || k == StageKind::Demux;
}

void validate_chain(const std::vector<StageKind>& stages) {
    if (stages.empty()) throw ConfigError("pipeline has no stages");
    int counts[6] = {0};
    for (StageKind k : stages)
        if (++counts[static_cast<int>(k)] > 1)
            throw ConfigError(std::string("stage '") + stage_name(k) +
                              "' appears more than once");

    // transmit* noise* receive*
    int phase = 0;
    for (StageKind k : stages) {
        int want = is_transmit(k) ? 0 : is_noise(k) ? 1 : 2;
        if (want < phase)
            throw ConfigError(std::string("stage '") + stage_name(k) +
                              "' out of order: chain must be transmit, "
                              "channel, receive");
        phase = want;
    }

    // each receive stage undoes the most recent unmatched transmit stage
    std::vector<StageKind> stack;
    for (StageKind k : stages) {
        if (is_transmit(k)) stack.push_back(k);
        if (!is_receive(k)) continue;
        StageKind want = k == StageKind::Despread ? StageKind::TemporalSpread
                                                  : StageKind::SpatialSpread;
        if (stack.empty() || stack.back() != want)
            throw ConfigError(std::string("stage '") + stage_name(k) +
                              "' does not match the innermost spreading stage");
        stack.pop_back();
    }
}

}  // namespace

RunConfig RunConfig::from_config(const ConfigMap& cfg) {
    RunConfig rc;
    rc.params = cfg;
    rc.input = cfg.require_string("input");
    rc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
    std::int64_t window = cfg.get_int("psd_window", 128);
    if (window < 2) throw ConfigError("psd_window must be >= 2");
    rc.psd_window = static_cast<std::size_t>(window);
    for (const std::string& name : split(cfg.require_string("pipeline"), ','))
        rc.pipeline.push_back(parse_stage(name));
    validate_chain(rc.pipeline);
    return rc;
}

void ExperimentReport::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}
void ExperimentReport::add(const std::string& key, std::int64_t value) {
    entries.emplace_back(key, std::to_string(value));
}
void ExperimentReport::add_double(const std::string& key, double value) {
    entries.emplace_back(key, format_double(value));
}

std::string ExperimentReport::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

Signal resolve_input(const std::string& input) {
    if (input.rfind("tone:", 0) != 0) return load_signal(input);
    double amp = 1.0, freq = 0.05, phase = 0.0, rate = 1.0;
    std::int64_t n = 128;
    for (const std::string& kv : split(input.substr(5), ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad tone parameter '" + kv + "'");
        std::string key = trim(kv.substr(0, eq));
        std::string val = trim(kv.substr(eq + 1));
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size())
            throw ConfigError("bad tone value '" + val + "'");
        if (key == "amp") amp = v;
        else if (key == "freq") freq = v;
        else if (key == "phase") phase = v;
        else if (key == "rate") rate = v;
        else if (key == "n") n = static_cast<std::int64_t>(v);
        else throw ConfigError("unknown tone parameter '" + key + "'");
    }
    if (n < 1) throw ConfigError("tone length must be >= 1");
    return tone(amp, freq, phase, static_cast<std::size_t>(n), rate);
}

namespace {

struct DefaultTaps {
    int degree;
    std::vector<int> taps;
};

// primitive feedback polynomials, one per register size
const DefaultTaps kDefaultTaps[] = {
    {2, {2, 1}},  {3, {3, 2}},       {4, {4, 3}},  {5, {5, 3}},
    {6, {6, 5}},  {7, {7, 6}},       {8, {8, 6, 5, 4}},
    {9, {9, 5}},  {10, {10, 7}},     {11, {11, 9}},
    {12, {12, 11, 10, 4}},
};

std::vector<int> default_taps(int degree) {
    for (const auto& d : kDefaultTaps)
        if (d.degree == degree) return d.taps;
    throw ConfigError("no default taps for degree " + std::to_string(degree) +
                      "; set taps explicitly");
}

std::vector<std::size_t> parse_rows(const std::string& text) {
    std::vector<std::size_t> rows;
    for (const std::string& item : split(text, ',')) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw ConfigError("bad row index '" + item + "'");
        rows.push_back(v);
    }
    return rows;
}

std::vector<int> parse_taps(const std::string& text) {
    std::vector<int> taps;
    for (const std::string& item : split(text, ',')) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw ConfigError("bad tap '" + item + "'");
        taps.push_back(v);
    }
    return taps;
}

TemporalSpreadConfig temporal_config(const ConfigMap& p) {
    try {
        Radix radix(static_cast<int>(p.require_int("temporal_spread.p")));
        PFraction omega1 =
            PFraction::parse(p.require_string("temporal_spread.omega1"));
        int chips = static_cast<int>(p.require_int("temporal_spread.chips"));
        Estimator est =
            Estimator::parse(p.get_string("temporal_spread.estimator", "mean"));
        return TemporalSpreadConfig(radix, omega1, chips, est);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("temporal_spread: ") + e.what());
    }
}

std::vector<SpreadingCode> spatial_codes(const ConfigMap& p, std::size_t users) {
    std::string family = p.require_string("spatial_spread.family");
    try {
        if (family == "pn") {
            if (users != 1)
                throw ConfigError("pn spreading supports a single user");
            LfsrSpec spec;
            spec.degree = static_cast<int>(p.require_int("spatial_spread.degree"));
            spec.taps = p.has("spatial_spread.taps")
                            ? parse_taps(p.get_string("spatial_spread.taps", ""))
                            : default_taps(spec.degree);
            spec.seed = static_cast<std::uint32_t>(
                p.get_int("spatial_spread.lfsr_seed", 1));
            return {pn_msequence(spec)};
        }
        std::vector<std::size_t> rows;
        if (p.has("spatial_spread.rows")) {
            rows = parse_rows(p.get_string("spatial_spread.rows", ""));
        } else {
            for (std::size_t u = 0; u < users; ++u) rows.push_back(u);
        }
        if (rows.size() < users)
            throw ConfigError("fewer rows than users");
        rows.resize(users);
        std::vector<SpreadingCode> codes;
        if (family == "walsh") {
            int m = static_cast<int>(p.require_int("spatial_spread.m"));
            for (std::size_t r : rows) codes.push_back(walsh_code(m, r));
        } else if (family == "ch") {
            Radix radix(static_cast<int>(p.require_int("spatial_spread.p")));
            int m = static_cast<int>(p.require_int("spatial_spread.m"));
            for (std::size_t r : rows) codes.push_back(ch_code(radix, m, r));
        } else {
            throw ConfigError("unknown code family '" + family + "'");
        }
        return codes;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("spatial_spread: ") + e.what());
    }
}

/// Round-robin serial-to-parallel split, zero-padded to a user multiple.
std::vector<Signal> split_users(const Signal& s, std::size_t users) {
    std::vector<Signal> streams(users);
    std::size_t n_symbols = (s.size() + users - 1) / users;
    for (std::size_t u = 0; u < users; ++u) {
        streams[u].sample_rate = s.sample_rate / static_cast<double>(users);
        streams[u].samples.assign(n_symbols, cplx{0.0, 0.0});
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        streams[i % users].samples[i / users] = s.samples[i];
    return streams;
}

Signal interleave_users(const std::vector<Signal>& streams,
                        std::size_t total_length, double sample_rate) {
    Signal out;
    out.sample_rate = sample_rate;
    out.samples.resize(total_length);
    std::size_t users = streams.size();
    for (std::size_t i = 0; i < total_length; ++i)
        out.samples[i] = streams[i % users].samples[i / users];
    return out;
}

void report_psd(ExperimentReport& report, const std::string& prefix,
                const Signal& s, std::size_t window,
                const std::filesystem::path& csv_path) {
    std::size_t n = std::min(window, s.size());
    if (n < 2) return;
    Signal head;
    head.sample_rate = s.sample_rate;
    head.samples.assign(s.samples.begin(), s.samples.begin() + n);
    PsdEstimate psd = periodogram(head);
    save_psd(psd, csv_path);
    report.add(prefix + ".window", static_cast<std::int64_t>(n));
    report.add_double(prefix + ".flatness", spectral_flatness(psd));
    PsdEstimate folded = fold_onesided(psd);
    BandInterval band = occupied_bandwidth(folded, 0.99);
    report.add(prefix + ".obw99_low_bin",
               static_cast<std::int64_t>(band.low_bin));
    report.add(prefix + ".obw99_high_bin",
               static_cast<std::int64_t>(band.high_bin));
    report.add_double(prefix + ".obw99_low_cycles",
                      static_cast<double>(band.low_bin) / static_cast<double>(n));
    report.add_double(prefix + ".obw99_high_cycles",
                      static_cast<double>(band.high_bin) / static_cast<double>(n));
}

}  // namespace

ExperimentReport run_pipeline(const RunConfig& cfg,
                              const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    ExperimentReport report;
    report.add("tool", kToolVersion);
    for (const auto& [k, v] : cfg.params.entries()) report.add("config." + k, v);

    const Signal input = resolve_input(cfg.input);
    if (input.empty()) throw ConfigError("input signal is empty");
    save_signal(input, out_dir / "input.csv");
    report.add("input.length", static_cast<std::int64_t>(input.size()));
    report.add_double("input.sample_rate", input.sample_rate);

    Signal signal = input;
    const ConfigMap& p = cfg.params;

    // transmit-side context consumed by the receive stages
    bool have_temporal = false;
    std::size_t pre_spread_length = 0;
    bool have_spatial = false;
    std::vector<SpreadingCode> codes;
    std::vector<Signal> tx_streams;
    std::size_t pre_split_length = 0;
    double pre_split_rate = 1.0;

    const Signal* transmitted = nullptr;
    Signal last_transmit;
    bool any_receive = false;

    for (std::size_t i = 0; i < cfg.pipeline.size(); ++i) {
        StageKind kind = cfg.pipeline[i];
        const std::string tag = "stage." + std::to_string(i + 1);
        switch (kind) {
            case StageKind::TemporalSpread: {
                TemporalSpreadConfig tcfg = temporal_config(p);
                pre_spread_length = signal.size();
                have_temporal = true;
                signal = spread(signal, tcfg);
                last_transmit = signal;
                transmitted = &last_transmit;
                break;
            }
            case StageKind::SpatialSpread: {
                std::int64_t users = p.get_int("spatial_spread.users", 1);
                if (users < 1) throw ConfigError("users must be >= 1");
                codes = spatial_codes(p, static_cast<std::size_t>(users));
                pre_split_length = signal.size();
                pre_split_rate = signal.sample_rate;
                tx_streams = split_users(signal, static_cast<std::size_t>(users));
                have_spatial = true;
                signal = mux_users(tx_streams, codes);
                last_transmit = signal;
                transmitted = &last_transmit;
                break;
            }
            case StageKind::ImpulseNoise: {
                ImpulseNoiseSpec spec;
                spec.period = static_cast<std::size_t>(
                    p.get_int("impulse_noise.period", 10));
                spec.burst_len = static_cast<std::size_t>(
                    p.get_int("impulse_noise.burst_len", 1));
                spec.amp_min = p.get_double("impulse_noise.amp_min", 0.1);
                spec.amp_max = p.get_double("impulse_noise.amp_max", 1.0);
                spec.real_only = p.get_bool("impulse_noise.real_only", false);
                spec.seed = static_cast<std::uint64_t>(p.get_int(
                    "impulse_noise.seed",
                    static_cast<std::int64_t>(cfg.seed * 1000 + i + 1)));
                auto [noisy, record] = apply_impulse_noise(signal, spec);
                signal = std::move(noisy);
                std::ofstream nr(out_dir / "noise_record.csv", std::ios::binary);
                if (!nr) throw IoError("cannot write noise_record.csv");
                nr << "position,re,im\n";
                for (std::size_t j = 0; j < record.positions.size(); ++j)
                    nr << record.positions[j] << ','
                       << format_double(record.noise_values[j].real()) << ','
                       << format_double(record.noise_values[j].imag()) << '\n';
                report.add("noise.impulse.count",
                           static_cast<std::int64_t>(record.positions.size()));
                double mean_abs = 0.0;
                for (const cplx& v : record.noise_values) mean_abs += std::abs(v);
                if (!record.noise_values.empty())
                    mean_abs /= static_cast<double>(record.noise_values.size());
                report.add_double("noise.impulse.mean_abs", mean_abs);
                break;
            }
            case StageKind::Awgn: {
                AwgnSpec spec;
                if (!p.has("awgn.snr_db"))
                    throw ConfigError("missing required key 'awgn.snr_db'");
                spec.snr_db = p.get_double("awgn.snr_db", 0.0);
                spec.seed = static_cast<std::uint64_t>(p.get_int(
                    "awgn.seed",
                    static_cast<std::int64_t>(cfg.seed * 1000 + i + 1)));
                signal = apply_awgn(signal, spec);
                break;
            }
            case StageKind::Demux: {
                any_receive = true;
                std::size_t users = tx_streams.size();
                std::size_t n_symbols = tx_streams[0].size();
                std::vector<Signal> rx_streams(users);
                for (std::size_t u = 0; u < users; ++u) {
                    rx_streams[u] = demux_user(signal, codes[u], n_symbols);
                    save_signal(rx_streams[u],
                                out_dir / ("user" + std::to_string(u) +
                                           "_recovered.csv"));
                    auto [diff, nmse] =
                        error_signal(rx_streams[u], tx_streams[u]);
                    (void)diff;
                    report.add_double(tag + ".user" + std::to_string(u) + ".nmse",
                                      nmse);
                }
                signal = interleave_users(rx_streams, pre_split_length,
                                          pre_split_rate);
                have_spatial = false;
                break;
            }
            case StageKind::Despread: {
                any_receive = true;
                TemporalSpreadConfig tcfg = temporal_config(p);
                signal = despread(signal, tcfg, pre_spread_length);
                have_temporal = false;
                break;
            }
        }
        save_signal(signal, out_dir / ("s" + std::to_string(i + 1) + "_" +
                                       stage_name(kind) + ".csv"));
        report.add(tag + ".name", stage_name(kind));
        report.add(tag + ".output_length", static_cast<std::int64_t>(signal.size()));
        report.add_double(tag + ".output_sample_rate", signal.sample_rate);
    }

    if (any_receive) save_signal(signal, out_dir / "recovered.csv");
    if (any_receive && !have_temporal && !have_spatial &&
        signal.size() == input.size()) {
        auto [diff, nmse] = error_signal(signal, input);
        save_signal(diff, out_dir / "error.csv");
        report.add_double("nmse", nmse);
    }

    report_psd(report, "psd.original", input, cfg.psd_window,
               out_dir / "psd_original.csv");
    if (transmitted != nullptr)
        report_psd(report, "psd.spread", *transmitted, cfg.psd_window,
                   out_dir / "psd_spread.csv");

    std::ofstream rf(out_dir / "report.txt", std::ios::binary);
    if (!rf) throw IoError("cannot write report.txt");
    rf << report.to_text();
    return report;
}

void write_codes_report(const std::vector<SpreadingCode>& codes,
                        const std::filesystem::path& chips_csv,
                        const std::filesystem::path& corr_csv) {
    if (codes.empty()) throw Error("no codes to report");
    std::ofstream chips(chips_csv, std::ios::binary);
    if (!chips) throw IoError("cannot write " + chips_csv.string());
    chips << "code,id,chip,re,im\n";
    for (std::size_t c = 0; c < codes.size(); ++c)
        for (std::size_t k = 0; k < codes[c].length(); ++k)
            chips << c << ',' << codes[c].id << ',' << k << ','
                  << format_double(codes[c].chips[k].real()) << ','
                  << format_double(codes[c].chips[k].imag()) << '\n';

    std::ofstream corr(corr_csv, std::ios::binary);
    if (!corr) throw IoError("cannot write " + corr_csv.string());
    corr << "code_a,code_b,zero_lag_re,zero_lag_im,zero_lag_abs,"
            "max_nonzero_lag,max_nonzero_abs\n";
    for (std::size_t a = 0; a < codes.size(); ++a) {
        for (std::size_t b = 0; b < codes.size(); ++b) {
            cplx zero = cross_correlation(codes[a], codes[b], 0);
            std::size_t L = codes[a].length();
            std::int64_t best_lag = 0;
            double best_abs = -1.0;
            for (std::size_t lag = 1; lag < L; ++lag) {
                double v = std::abs(cross_correlation(
                    codes[a], codes[b], static_cast<std::int64_t>(lag)));
                if (v > best_abs + 1e-15) {
                    best_abs = v;
                    best_lag = static_cast<std::int64_t>(lag);
                }
            }
            if (best_abs < 0.0) best_abs = 0.0;  // length-1 codes
            corr << a << ',' << b << ',' << format_double(zero.real()) << ','
                 << format_double(zero.imag()) << ','
                 << format_double(std::abs(zero)) << ',' << best_lag << ','
                 << format_double(best_abs) << '\n';
        }
    }
}

}  // namespace chspread
