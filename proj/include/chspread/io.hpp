#pragma once

#include <filesystem>
#include <string>

#include "chspread/analysis.hpp"
#include "chspread/signal.hpp"
#include "chspread/errors.hpp"


namespace chspread {

enum class SignalFormat { Csv, Wav16Mono };

/// Loads a signal from CSV (`index,re,im`, header optional) or 16-bit PCM
/// mono WAV (samples scaled to [-1, 1)).
Signal load_signal(const std::filesystem::path& path, SignalFormat format);

/// Format picked from the file extension (.wav -> WAV, anything else CSV).
Signal load_signal(const std::filesystem::path& path);

/// Writes `index,re,im` CSV at full double precision (17 significant
/// digits). Deterministic byte-for-byte for a given signal.
void save_signal(const Signal& s, const std::filesystem::path& path);

/// Writes `bin,freq_cycles_per_sample,power` CSV.
void save_psd(const PsdEstimate& psd, const std::filesystem::path& path);

/// Shortest round-trippable decimal form of a double ("%.17g").
std::string format_double(double v);

}  // namespace chspread
