#include "spinmarket/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinmarket/blocks.hpp"
#include "spinmarket/csv.hpp"
#include "spinmarket/detector.hpp"
#include "spinmarket/errors.hpp"
#include "spinmarket/format.hpp"
#include "spinmarket/svg.hpp"

namespace spinmarket {

namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (input_path.empty()) throw_validation("input path is required");
    if (input_kind != "ticks" && input_kind != "eod") {
        throw_validation("input_kind must be 'ticks' or 'eod'");
    }
    if (window < 3) throw_validation("window must be >= 3");
    if (trend_window < 3) throw_validation("trend_window must be >= 3");
    if (levels < 1) throw_validation("levels must be >= 1");
    if (!(tolerance > 0.0)) throw_validation("tolerance must be > 0");
    if (!(floor_value > 0.0)) throw_validation("floor must be > 0");
    if (!(dt0 > 0.0)) throw_validation("dt0 must be > 0");
    if (weights != "volume" && weights != "uniform") {
        throw_validation("weights must be 'volume' or 'uniform'");
    }
    if (renorm_mode != "weighted" && renorm_mode != "open_close") {
        throw_validation("renorm_mode must be 'weighted' or 'open_close'");
    }
    if (out_dir.empty()) throw_validation("output directory is required");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open config '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw_validation(path + " row " + std::to_string(row) +
                             ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("input")) c.input_path = *v;
    if (auto* v = get("input_kind")) c.input_kind = *v;
    if (auto* v = get("window")) c.window = static_cast<int>(parse_int64(*v, "window"));
    if (auto* v = get("trend_window")) {
        c.trend_window = static_cast<int>(parse_int64(*v, "trend_window"));
    }
    if (auto* v = get("threshold")) c.threshold = parse_double(*v, "threshold");
    if (auto* v = get("dt0")) c.dt0 = parse_double(*v, "dt0");
    if (auto* v = get("levels")) c.levels = static_cast<int>(parse_int64(*v, "levels"));
    if (auto* v = get("partition")) c.partition = *v;
    if (auto* v = get("weights")) c.weights = *v;
    if (auto* v = get("renorm_mode")) c.renorm_mode = *v;
    if (auto* v = get("tolerance")) c.tolerance = parse_double(*v, "tolerance");
    if (auto* v = get("floor")) c.floor_value = parse_double(*v, "floor");
    if (auto* v = get("seed")) {
        c.seed = static_cast<std::uint64_t>(parse_int64(*v, "seed"));
    }
    if (auto* v = get("out_dir")) c.out_dir = *v;
    if (auto* v = get("svg")) c.svg = *v == "true" || *v == "1";
}

namespace {

std::vector<BlockPartition> build_partitions(const RunConfig& c,
                                             const PriceSeries& level0) {
    std::vector<BlockPartition> parts;
    const int transitions = c.levels - 1;
    if (transitions == 0) return parts;

    if (c.partition == "day") {
        // First transition groups by UTC day; deeper levels pair samples.
        PriceSeries cur = level0;
        for (int t = 0; t < transitions; ++t) {
            BlockPartition p = t == 0 ? BlockPartition::by_day(cur.timestamps)
                                      : BlockPartition::fixed(cur.size(), 2);
            // Apply structurally to know the next level's shape.
            PriceSeries next;
            next.level = cur.level + 1;
            for (const auto& r : p.ranges) {
                next.timestamps.push_back(cur.timestamps[r.end - 1]);
                next.prices.push_back(cur.prices[r.begin]);
            }
            parts.push_back(std::move(p));
            cur = std::move(next);
        }
        return parts;
    }

    if (c.partition.rfind("size:", 0) == 0) {
        std::vector<std::size_t> sizes;
        std::stringstream ss(c.partition.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            sizes.push_back(static_cast<std::size_t>(parse_int64(tok, "partition")));
        }
        if (sizes.empty()) throw_validation("partition sizes missing");
        std::size_t n = level0.size();
        for (int t = 0; t < transitions; ++t) {
            const std::size_t b = sizes[std::min<std::size_t>(t, sizes.size() - 1)];
            BlockPartition p = BlockPartition::fixed(n, b);
            n = p.block_count();
            parts.push_back(std::move(p));
        }
        return parts;
    }
    throw_validation("partition must be 'day' or 'size:B[,B,...]'");
}

class RunDirectory {
public:
    explicit RunDirectory(const fs::path& dir) : dir_(dir) {
        std::error_code ec;
        created_dir_ = fs::create_directories(dir, ec);
        if (ec) throw_io("cannot create run directory '" + dir.string() + "'");
    }

    // Remove partial outputs when a stage aborts the run.
    void rollback() {
        std::error_code ec;
        for (const auto& f : files_) fs::remove(dir_ / f, ec);
        if (created_dir_) fs::remove(dir_, ec);
    }

    fs::path add(const std::string& name) {
        files_.push_back(name);
        return dir_ / name;
    }
    // emit_plot writes a sibling CSV on its own.
    void note_sibling(const std::string& name) { files_.push_back(name); }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
    bool created_dir_ = false;
};

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
    config.validate();
    const fs::path out_dir(config.out_dir);
    RunDirectory run(out_dir);

    auto stage = [&](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const Error& e) {
            run.rollback();
            throw Error(e.kind(), std::string("stage ") + name + ": " + e.what());
        } catch (const std::exception& e) {
            run.rollback();
            throw Error(ErrorKind::io, std::string("stage ") + name + ": " + e.what());
        }
    };

    // ingest
    PriceSeries level0 = stage("ingest", [&] {
        return config.input_kind == "eod" ? parse_ohlcv_csv(config.input_path)
                                          : parse_tick_csv(config.input_path);
    });

    // temperature + renormalize
    TemperatureStack stack = stage("temperature", [&] {
        StackParams sp;
        sp.temperature.window = config.window;
        sp.temperature.dt = config.dt0;
        sp.temperature.trend_window = config.trend_window;
        sp.temperature.threshold = config.threshold;
        sp.weights = config.weights == "uniform" ? WeightSource::uniform
                                                 : WeightSource::volume;
        sp.mode = config.renorm_mode == "open_close" ? RenormMode::open_close_only
                                                     : RenormMode::weighted_all;
        return temperature_stack(level0, build_partitions(config, level0), sp);
    });

    // detect
    std::vector<SignalEvent> events = stage("detect", [&] {
        return detect_transitions(stack, config.tolerance, config.floor_value);
    });

    // emit
    RunResult result = stage("emit", [&] {
        RunResult res;
        // Rebuild the per-level price series for export.
        std::vector<PriceSeries> price_levels{level0};
        {
            StackParams sp;
            sp.weights = config.weights == "uniform" ? WeightSource::uniform
                                                     : WeightSource::volume;
            sp.mode = config.renorm_mode == "open_close" ? RenormMode::open_close_only
                                                         : RenormMode::weighted_all;
            PriceSeries cur = level0;
            for (const auto& part : build_partitions(config, level0)) {
                WeightProfile w =
                    sp.weights == WeightSource::volume && cur.has_volumes()
                        ? block_weights_from_volume(cur, part)
                        : uniform_weights(part);
                cur = renormalize_series(cur, part, w, sp.mode);
                price_levels.push_back(cur);
            }
        }
        for (std::size_t k = 0; k < price_levels.size(); ++k) {
            write_price_csv(price_levels[k],
                            run.add("level" + std::to_string(k) + "_prices.csv").string());
        }
        for (std::size_t k = 0; k < stack.levels.size(); ++k) {
            write_temperature_csv(
                stack.levels[k],
                run.add("level" + std::to_string(k) + "_temperature.csv").string());
        }
        write_alignment_csv(stack.alignment, run.add("alignment.csv").string());
        write_events_csv(events, stack.levels.size(), run.add("events.csv").string());

        if (config.svg) {
            std::vector<PlotSeries> prices_plot;
            for (std::size_t k = 0; k < price_levels.size(); ++k) {
                PlotSeries ps;
                ps.label = "level " + std::to_string(k);
                for (std::size_t i = 0; i < price_levels[k].size(); ++i) {
                    ps.x.push_back(static_cast<double>(price_levels[k].timestamps[i]));
                    ps.y.push_back(price_levels[k].prices[i]);
                }
                prices_plot.push_back(std::move(ps));
            }
            emit_plot(prices_plot, PlotKind::stack, run.add("prices.svg").string(),
                      "price levels", "time (ms)", "price");
            run.note_sibling("prices.svg.csv");

            std::vector<PlotSeries> temp_plot;
            for (std::size_t k = 0; k < stack.levels.size(); ++k) {
                PlotSeries ps;
                ps.label = "T" + std::to_string(k);
                const auto& lvl = stack.levels[k];
                for (std::size_t i = 0; i < lvl.size(); ++i) {
                    if (!lvl.temperatures[i].has_value()) continue;
                    ps.x.push_back(static_cast<double>(lvl.timestamps[i]));
                    ps.y.push_back(*lvl.temperatures[i]);
                }
                if (!ps.x.empty()) temp_plot.push_back(std::move(ps));
            }
            emit_plot(temp_plot, PlotKind::stack, run.add("temperatures.svg").string(),
                      "renormalized temperatures", "time (ms)", "temperature");
            run.note_sibling("temperatures.svg.csv");
        }

        // Manifest: inputs, seed, parameters, output checksums. Output order
        // is sorted so reruns are byte-identical.
        nlohmann::ordered_json manifest;
        manifest["tool"] = "spinmarket";
        manifest["command"] = "pipeline";
        manifest["seed"] = config.seed;
        nlohmann::ordered_json params;
        params["input_kind"] = config.input_kind;
        params["window"] = config.window;
        params["trend_window"] = config.trend_window;
        params["threshold"] = config.threshold;
        params["dt0"] = config.dt0;
        params["levels"] = config.levels;
        params["partition"] = config.partition;
        params["weights"] = config.weights;
        params["renorm_mode"] = config.renorm_mode;
        params["tolerance"] = config.tolerance;
        params["floor"] = config.floor_value;
        manifest["parameters"] = params;
        manifest["inputs"] = nlohmann::ordered_json::array();
        manifest["inputs"].push_back(
            {{"path", fs::path(config.input_path).filename().string()},
             {"fnv1a64", hex_u64(fnv1a64_file(config.input_path))}});
        std::vector<std::string> files = run.files();
        std::sort(files.begin(), files.end());
        manifest["outputs"] = nlohmann::ordered_json::array();
        for (const auto& f : files) {
            manifest["outputs"].push_back(
                {{"path", f}, {"fnv1a64", hex_u64(fnv1a64_file((out_dir / f).string()))}});
        }
        manifest["n_events"] = events.size();

        const fs::path manifest_path = run.add("manifest.json");
        std::ofstream mf(manifest_path, std::ios::binary);
        if (!mf) throw_io("cannot write manifest");
        mf << manifest.dump(2) << '\n';

        res.manifest_path = manifest_path.string();
        res.n_events = events.size();
        res.outputs = files;
        return res;
    });

    return result;
}

}  // namespace spinmarket
