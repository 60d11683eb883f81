#include "chspread/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "chspread/errors.hpp"

namespace chspread {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

double parse_field(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* begin = field.c_str();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad numeric field '" + field + "'");
    return v;
}

Signal load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    Signal out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.find_first_not_of("0123456789+-., \teE") !=
                                std::string::npos)
            continue;  // header row
        std::stringstream ss(line);
        std::string idx, re, im;
        if (!std::getline(ss, idx, ',') || !std::getline(ss, re, ','))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected index,re,im");
        if (!std::getline(ss, im, ',')) im = "0";
        parse_field(idx, line_no);  // index column is informational
        out.samples.emplace_back(parse_field(re, line_no),
                                 parse_field(im, line_no));
    }
    return out;
}

std::uint32_t read_u32(const unsigned char* b) {
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* b) {
    return static_cast<std::uint16_t>(b[0] |
                                      (static_cast<std::uint16_t>(b[1]) << 8));
}

Signal load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw ParseError("not a RIFF/WAVE file: " + path.string());

    std::uint16_t channels = 0, bits = 0, format = 0;
    std::uint32_t rate = 0;
    const unsigned char* data = nullptr;
    std::uint32_t data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* hdr = bytes.data() + pos;
        std::uint32_t chunk_len = read_u32(hdr + 4);
        if (pos + 8 + chunk_len > bytes.size())
            throw ParseError("truncated chunk at byte " + std::to_string(pos));
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_len < 16)
                throw ParseError("fmt chunk too short at byte " +
                                 std::to_string(pos));
            format = read_u16(hdr + 8);
            channels = read_u16(hdr + 10);
            rate = read_u32(hdr + 12);
            bits = read_u16(hdr + 22);
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            data = hdr + 8;
            data_len = chunk_len;
        }
        pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
    }
    if (format == 0 || data == nullptr)
        throw ParseError("missing fmt or data chunk: " + path.string());
    if (format != 1) throw UnsupportedFormat("only PCM WAV is supported");
    if (channels != 1) throw UnsupportedFormat("only mono WAV is supported");
    if (bits != 16) throw UnsupportedFormat("only 16-bit WAV is supported");

    Signal out;
    out.sample_rate = rate > 0 ? static_cast<double>(rate) : 1.0;
    out.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        std::int16_t v = static_cast<std::int16_t>(read_u16(data + 2 * i));
        out.samples[i] = {static_cast<double>(v) / 32768.0, 0.0};
    }
    return out;
}

}  // namespace

Signal load_signal(const std::filesystem::path& path, SignalFormat format) {
    switch (format) {
        case SignalFormat::Csv: return load_csv(path);
        case SignalFormat::Wav16Mono: return load_wav(path);
    }
    throw UnsupportedFormat("unknown signal format");
}

Signal load_signal(const std::filesystem::path& path) {
    return load_signal(path, path.extension() == ".wav"
                                 ? SignalFormat::Wav16Mono
                                 : SignalFormat::Csv);
}

void save_signal(const Signal& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "index,re,im\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << i << ',' << format_double(s.samples[i].real()) << ','
            << format_double(s.samples[i].imag()) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void save_psd(const PsdEstimate& psd, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "bin,freq_cycles_per_sample,power\n";
    const double n = static_cast<double>(psd.n_samples);
    for (std::size_t k = 0; k < psd.bins.size(); ++k)
        out << k << ',' << format_double(static_cast<double>(k) / n) << ','
            << format_double(psd.bins[k]) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace chspread
