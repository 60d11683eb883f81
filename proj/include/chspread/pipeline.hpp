#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chspread/signal.hpp"
#include "chspread/spatial_spread.hpp"

namespace chspread {

/// Flat key-value view of a parsed config file (TOML subset: `key = value`
/// lines, `[section]` headers, `#` comments, quoted strings). Section keys
/// are flattened to "section.key".
class ConfigMap {
public:
    static ConfigMap parse_text(const std::string& text);
    static ConfigMap parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key,
                           const std::string& fallback = "") const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Required-key variants; throw ConfigError when missing.
    std::string require_string(const std::string& key) const;
    std::int64_t require_int(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

enum class StageKind {
    TemporalSpread,
    SpatialSpread,
    ImpulseNoise,
    Awgn,
    Despread,
    Demux,
};

const char* stage_name(StageKind kind);

/// Validated experiment description: input source, ordered stage chain and
/// per-stage parameter blocks (kept in `params`).
struct RunConfig {
    std::vector<StageKind> pipeline;
    std::string input;  // "tone:amp=..,freq=..,phase=..,n=.." or a file path
    std::uint64_t seed = 0;
    std::size_t psd_window = 128;
    ConfigMap params;

    /// Parses and validates; throws ConfigError for an invalid stage chain
    /// or missing/bad parameters.
    static RunConfig from_config(const ConfigMap& cfg);
};

/// Ordered key-value report, serialized one `key = value` line each.
struct ExperimentReport {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::int64_t value);
    void add_double(const std::string& key, double value);
    std::string to_text() const;
};

/// Resolves a "tone:..." descriptor or loads a CSV/WAV file.
Signal resolve_input(const std::string& input);

/// Executes the configured stage chain, writing per-stage CSVs, PSDs, the
/// noise record and report.txt into out_dir. Fully determined by
/// (config, seed): identical inputs give byte-identical output trees.
ExperimentReport run_pipeline(const RunConfig& cfg,
                              const std::filesystem::path& out_dir);

/// Emits code chip CSV plus a pairwise correlation table (zero-lag and
/// max-magnitude nonzero-lag cyclic correlations) for MAI inspection.
void write_codes_report(const std::vector<SpreadingCode>& codes,
                        const std::filesystem::path& chips_csv,
                        const std::filesystem::path& corr_csv);

extern const char* kToolVersion;

}  // namespace chspread
