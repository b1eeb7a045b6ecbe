#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spinmarket {

/// Parameters of a full pipeline run. Values come from a flat `key = value`
/// config file and/or command-line flags (flags win); SPINMARKET_SEED in the
/// environment overrides a config-file seed.
struct RunConfig {
    std::string input_path;
    std::string input_kind = "ticks";  // ticks | eod
    int window = 32;
    int trend_window = 16;
    double threshold = 0.05;
    double dt0 = 1.0;
    int levels = 3;
    std::string partition = "day";  // "day" or "size:B[,B,...]"
    std::string weights = "volume";  // volume | uniform
    std::string renorm_mode = "weighted";  // weighted | open_close
    double tolerance = 0.15;
    double floor_value = 1e-12;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool svg = true;

    void validate() const;
};

/// Flat key = value file; '#' starts a comment line.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& config, const std::map<std::string, std::string>& kv);

struct RunResult {
    std::string manifest_path;
    std::size_t n_events = 0;
    std::vector<std::string> outputs;
};

/// ingest -> temperatures -> renormalize -> detect -> emit, all into
/// config.out_dir, with a manifest listing inputs, seed, parameters and
/// output checksums. A stage failure removes everything this run created.
RunResult run_pipeline(const RunConfig& config);

}  // namespace spinmarket
