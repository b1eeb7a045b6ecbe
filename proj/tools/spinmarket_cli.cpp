// spinmarket: spin-system Monte Carlo, partition-function zeros and the
// market temperature/renormalization pipeline behind one set of subcommands.

#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmarket/blocks.hpp"
#include "spinmarket/csv.hpp"
#include "spinmarket/detector.hpp"
#include "spinmarket/errors.hpp"
#include "spinmarket/format.hpp"
#include "spinmarket/gbm.hpp"
#include "spinmarket/partition.hpp"
#include "spinmarket/pipeline.hpp"
#include "spinmarket/renorm_map.hpp"
#include "spinmarket/roots.hpp"
#include "spinmarket/series.hpp"
#include "spinmarket/spin.hpp"
#include "spinmarket/svg.hpp"

namespace sm = spinmarket;

namespace {

std::vector<sm::PlotSeries> scatter_of(const std::vector<std::complex<double>>& zs,
                                       const std::string& label) {
    sm::PlotSeries s;
    s.label = label;
    for (const auto& z : zs) {
        s.x.push_back(z.real());
        s.y.push_back(z.imag());
    }
    return {s};
}

sm::PriceSeries load_series(const std::string& path, const std::string& kind) {
    return kind == "eod" ? sm::parse_ohlcv_csv(path) : sm::parse_tick_csv(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"market-as-spin-system toolkit"};
    app.require_subcommand(1);

    // ---- simulate-spins -----------------------------------------------------
    auto* sim = app.add_subcommand("simulate-spins",
                                   "Metropolis trace of a spin-1/2 ring");
    int sim_n = 64;
    double sim_j = 0.0, sim_h = 0.5, sim_beta = 1.0;
    long sim_sweeps = 1000;
    std::uint64_t sim_seed = 1;
    std::string sim_out = "trace.csv";
    bool sim_svg = false;
    sim->add_option("--sites", sim_n, "number of spins");
    sim->add_option("--coupling", sim_j, "nearest-neighbor J");
    sim->add_option("--field", sim_h, "external field h");
    sim->add_option("--beta", sim_beta, "inverse temperature");
    sim->add_option("--sweeps", sim_sweeps, "full-lattice sweeps");
    sim->add_option("--seed", sim_seed)->envname("SPINMARKET_SEED");
    sim->add_option("-o,--out", sim_out, "trace CSV path");
    sim->add_flag("--svg", sim_svg, "also write an SVG next to the CSV");

    // ---- entropy-curve ------------------------------------------------------
    auto* ent = app.add_subcommand("entropy-curve", "exact S(E) by enumeration");
    double ent_j = 0.0, ent_h = 1.0;
    int ent_n = 12;
    std::string ent_out = "entropy.csv";
    bool ent_svg = false;
    ent->add_option("--coupling", ent_j);
    ent->add_option("--field", ent_h);
    ent->add_option("--sites", ent_n, "n <= 24");
    ent->add_option("-o,--out", ent_out);
    ent->add_flag("--svg", ent_svg);

    // ---- hysteresis ---------------------------------------------------------
    auto* hys = app.add_subcommand("hysteresis", "field-cycle loop and area");
    int hys_n = 64, hys_steps = 41;
    double hys_j = 1.0, hys_beta = 1.5, hys_hmax = 2.0;
    long hys_sweeps = 200;
    std::uint64_t hys_seed = 1;
    std::string hys_out = "loop.csv";
    bool hys_svg = false;
    hys->add_option("--sites", hys_n);
    hys->add_option("--coupling", hys_j);
    hys->add_option("--beta", hys_beta);
    hys->add_option("--h-max", hys_hmax);
    hys->add_option("--field-steps", hys_steps);
    hys->add_option("--sweeps-per-step", hys_sweeps);
    hys->add_option("--seed", hys_seed)->envname("SPINMARKET_SEED");
    hys->add_option("-o,--out", hys_out);
    hys->add_flag("--svg", hys_svg);

    // ---- inversion ----------------------------------------------------------
    auto* inv = app.add_subcommand("inversion", "population inversion trace");
    int inv_n = 512;
    double inv_j = 0.0, inv_h = 1.0, inv_beta = 1.0;
    long inv_flip = 200, inv_total = 1000;
    std::uint64_t inv_seed = 1;
    std::string inv_out = "inversion.csv";
    bool inv_svg = false;
    inv->add_option("--sites", inv_n);
    inv->add_option("--coupling", inv_j);
    inv->add_option("--field", inv_h);
    inv->add_option("--beta", inv_beta);
    inv->add_option("--flip-time", inv_flip);
    inv->add_option("--steps", inv_total);
    inv->add_option("--seed", inv_seed)->envname("SPINMARKET_SEED");
    inv->add_option("-o,--out", inv_out);
    inv->add_flag("--svg", inv_svg);

    // ---- magnetocaloric -----------------------------------------------------
    auto* mag = app.add_subcommand("magnetocaloric", "adiabatic demagnetization");
    double mag_beta = 1.0, mag_h = 2.0;
    int mag_steps = 100;
    std::string mag_out = "magnetocaloric.csv";
    bool mag_svg = false;
    mag->add_option("--beta", mag_beta);
    mag->add_option("--field", mag_h);
    mag->add_option("--ramp-steps", mag_steps);
    mag->add_option("-o,--out", mag_out);
    mag->add_flag("--svg", mag_svg);

    // ---- partition-zeros ----------------------------------------------------
    auto* pz = app.add_subcommand("partition-zeros",
                                  "fugacity zeros of the chain partition function");
    double pz_k = 0.5;
    int pz_n = 64;
    double pz_tol = 1e-10;
    std::string pz_out = "zeros.csv";
    bool pz_svg = false;
    pz->add_option("--coupling-k", pz_k, "K = beta*J");
    pz->add_option("--sites", pz_n);
    pz->add_option("--tol", pz_tol);
    pz->add_option("-o,--out", pz_out);
    pz->add_flag("--svg", pz_svg);

    // ---- julia --------------------------------------------------------------
    auto* jul = app.add_subcommand("julia", "inverse-iteration Julia cloud");
    int jul_gen = 12;
    std::size_t jul_cap = 20000;
    std::uint64_t jul_seed = 1;
    double jul_re = 0.0, jul_im = 0.0;
    bool jul_svg = false;
    std::string jul_out = "julia.csv";
    jul->add_option("--generations", jul_gen);
    jul->add_option("--cap", jul_cap, "maximum number of points");
    jul->add_option("--seed", jul_seed)->envname("SPINMARKET_SEED");
    jul->add_option("--seed-re", jul_re, "seed point (default: the repelling fixed point)");
    jul->add_option("--seed-im", jul_im);
    jul->add_option("-o,--out", jul_out);
    jul->add_flag("--svg", jul_svg);

    // ---- fixed-point ----------------------------------------------------------
    auto* fp = app.add_subcommand("fixed-point",
                                  "fixed point and multiplier of the map");
    double fp_lo = 0.3, fp_hi = 0.8;
    std::string fp_out = "fixed_point.txt";
    fp->add_option("--lo", fp_lo);
    fp->add_option("--hi", fp_hi);
    fp->add_option("-o,--out", fp_out);

    // ---- temperature ----------------------------------------------------------
    auto* tmp = app.add_subcommand("temperature", "signed effective temperature");
    std::string tmp_in, tmp_kind = "ticks", tmp_out = "temperature.csv";
    int tmp_window = 32, tmp_trend = 16;
    double tmp_dt = 1.0, tmp_threshold = 0.05;
    bool tmp_unsigned = false;
    tmp->add_option("-i,--input", tmp_in)->required();
    tmp->add_option("--input-kind", tmp_kind, "ticks | eod");
    tmp->add_option("--window", tmp_window);
    tmp->add_option("--dt", tmp_dt);
    tmp->add_option("--trend-window", tmp_trend);
    tmp->add_option("--threshold", tmp_threshold);
    tmp->add_flag("--always-positive", tmp_unsigned, "skip the sign criterion");
    tmp->add_option("-o,--out", tmp_out);

    // ---- renormalize ----------------------------------------------------------
    auto* ren = app.add_subcommand("renormalize", "block-renormalize a series");
    std::string ren_in, ren_kind = "ticks", ren_out = "renormalized.csv";
    std::string ren_partition = "day", ren_weights = "volume", ren_mode = "weighted";
    ren->add_option("-i,--input", ren_in)->required();
    ren->add_option("--input-kind", ren_kind);
    ren->add_option("--partition", ren_partition, "'day' or 'size:B'");
    ren->add_option("--weights", ren_weights, "volume | uniform");
    ren->add_option("--mode", ren_mode, "weighted | open_close");
    ren->add_option("-o,--out", ren_out);

    // ---- detect ----------------------------------------------------------------
    auto* det = app.add_subcommand("detect", "coincidence events from level CSVs");
    std::vector<std::string> det_levels;
    std::string det_out = "events.csv";
    double det_tol = 0.15, det_floor = 1e-12;
    det->add_option("--level", det_levels, "temperature CSV, repeat per level")
        ->required()
        ->expected(-2);
    det->add_option("--tolerance", det_tol);
    det->add_option("--floor", det_floor);
    det->add_option("-o,--out", det_out);

    // ---- gbm -------------------------------------------------------------------
    auto* gbm = app.add_subcommand("gbm", "synthetic geometric Brownian ticks");
    sm::GbmParams gp;
    std::string gbm_out = "ticks.csv";
    std::string gbm_volumes = "flat";
    std::size_t gbm_day_len = 0;
    long long gbm_t0 = 0;
    gbm->add_option("--s0", gp.s0);
    gbm->add_option("--mu", gp.mu);
    gbm->add_option("--sigma", gp.sigma);
    gbm->add_option("--dt", gp.dt);
    gbm->add_option("-n,--samples", gp.n);
    gbm->add_option("--seed", gp.seed)->envname("SPINMARKET_SEED");
    gbm->add_option("--tick-ms", gp.tick_ms);
    gbm->add_option("--t0-ms", gbm_t0);
    gbm->add_option("--volumes", gbm_volumes, "flat | ushape");
    gbm->add_option("--day-length", gbm_day_len, "samples per day for ushape");
    gbm->add_option("-o,--out", gbm_out);

    // ---- pipeline ----------------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "ingest -> detect, full run");
    sm::RunConfig rc;
    std::string pipe_config;
    pipe->add_option("--config", pipe_config, "flat key = value file");
    pipe->add_option("-i,--input", rc.input_path);
    pipe->add_option("--input-kind", rc.input_kind);
    pipe->add_option("--window", rc.window);
    pipe->add_option("--trend-window", rc.trend_window);
    pipe->add_option("--threshold", rc.threshold);
    pipe->add_option("--dt0", rc.dt0);
    pipe->add_option("--levels", rc.levels);
    pipe->add_option("--partition", rc.partition);
    pipe->add_option("--weights", rc.weights);
    pipe->add_option("--renorm-mode", rc.renorm_mode);
    pipe->add_option("--tolerance", rc.tolerance);
    pipe->add_option("--floor", rc.floor_value);
    auto* pipe_seed_opt = pipe->add_option("--seed", rc.seed);
    pipe->add_option("-o,--out-dir", rc.out_dir);
    auto* pipe_no_svg = pipe->add_flag("--no-svg", "skip SVG output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad flags and arguments are validation failures
    }

    try {
        if (sim->parsed()) {
            auto sys = sm::SpinSystem::aligned(sim_n, sim_j, sim_h, sim_beta, sim_seed, -1);
            sm::Rng rng(sys.rng_seed);
            sm::ScenarioTrace trace;
            int prev_sign = 1;
            for (long step = 0; step < sim_sweeps; ++step) {
                const double m = sys.magnetization();
                const auto be = sm::beta_effective(m, sys.field_h, prev_sign);
                if (!be.is_marker() && be.value != 0.0) prev_sign = be.value < 0 ? -1 : 1;
                trace.steps.push_back({step, m, sys.field_h, be});
                sm::metropolis_updates(sys, rng, 1);
            }
            sm::write_trace_csv(trace, sim_out);
            if (sim_svg) {
                sm::PlotSeries s;
                s.label = "m";
                for (const auto& st : trace.steps) {
                    s.x.push_back(static_cast<double>(st.step));
                    s.y.push_back(st.magnetization);
                }
                sm::emit_plot({s}, sm::PlotKind::series, sim_out + ".svg",
                              "magnetization", "sweep", "m");
            }
            std::cout << "final m = " << sm::format_g17(sys.magnetization()) << "\n";
        } else if (ent->parsed()) {
            const auto curve = sm::entropy_curve(ent_j, ent_h, ent_n);
            sm::write_entropy_csv(curve, ent_out);
            if (ent_svg) {
                sm::PlotSeries s;
                s.label = "S(E)";
                for (const auto& p : curve.points) {
                    s.x.push_back(p.energy_per_spin);
                    s.y.push_back(p.entropy_per_spin);
                }
                sm::emit_plot({s}, sm::PlotKind::series, ent_out + ".svg",
                              "entropy per spin", "E per spin", "S per spin");
            }
        } else if (hys->parsed()) {
            auto sys = sm::SpinSystem::aligned(hys_n, hys_j, 0.0, hys_beta, hys_seed);
            const auto loop =
                sm::hysteresis_loop(sys, hys_hmax, hys_steps, hys_sweeps);
            sm::write_loop_csv(loop, hys_out);
            if (hys_svg) {
                sm::PlotSeries down{"down", {}, {}}, up{"up", {}, {}};
                for (const auto& [h, m] : loop.branch_down) {
                    down.x.push_back(h);
                    down.y.push_back(m);
                }
                for (const auto& [h, m] : loop.branch_up) {
                    up.x.push_back(h);
                    up.y.push_back(m);
                }
                sm::emit_plot({down, up}, sm::PlotKind::series, hys_out + ".svg",
                              "hysteresis loop", "h", "m");
            }
            std::cout << "loop_area = " << sm::format_g17(loop.loop_area) << "\n";
        } else if (inv->parsed()) {
            auto sys = sm::SpinSystem::aligned(inv_n, inv_j, inv_h, inv_beta, inv_seed);
            const auto trace = sm::population_inversion_run(sys, inv_flip, inv_total);
            sm::write_trace_csv(trace, inv_out);
            if (inv_svg) {
                sm::PlotSeries s;
                s.label = "beta_eff";
                for (const auto& st : trace.steps) {
                    if (st.beta_eff.is_marker() || !std::isfinite(st.beta_eff.value))
                        continue;
                    s.x.push_back(static_cast<double>(st.step));
                    s.y.push_back(st.beta_eff.value);
                }
                sm::emit_plot({s}, sm::PlotKind::series, inv_out + ".svg",
                              "population inversion", "step", "beta_eff");
            }
        } else if (mag->parsed()) {
            const auto trace = sm::magnetocaloric_run(mag_beta, mag_h, mag_steps);
            sm::write_trace_csv(trace, mag_out);
            if (mag_svg) {
                sm::PlotSeries s;
                s.label = "T_eff";
                for (const auto& st : trace.steps) {
                    s.x.push_back(static_cast<double>(st.step));
                    s.y.push_back(st.field_h / std::atanh(st.magnetization));
                }
                sm::emit_plot({s}, sm::PlotKind::series, mag_out + ".svg",
                              "magnetocaloric cooling", "step", "T_eff");
            }
        } else if (pz->parsed()) {
            const auto poly = sm::chain_partition_polynomial(pz_k, pz_n);
            const auto zeros = sm::find_zeros(poly, pz_tol);
            sm::write_complex_csv(zeros.zeros, pz_out);
            if (pz_svg) {
                sm::emit_plot(scatter_of(zeros.zeros, "zeros"), sm::PlotKind::scatter,
                              pz_out + ".svg", "partition zeros", "Re z", "Im z");
            }
            std::cout << "residual_bound = " << sm::format_g17(zeros.residual_bound)
                      << "\n";
        } else if (jul->parsed()) {
            std::complex<double> seed_pt;
            if (jul->count("--seed-re") || jul->count("--seed-im")) {
                seed_pt = {jul_re, jul_im};
            } else {
                seed_pt = {sm::find_fixed_point(0.3, 0.8).t_star, 0.0};
            }
            const auto cloud =
                sm::julia_inverse_iteration(seed_pt, jul_gen, jul_cap, jul_seed);
            sm::write_complex_csv(cloud.points, jul_out);
            if (jul_svg) {
                sm::emit_plot(scatter_of(cloud.points, "julia"), sm::PlotKind::scatter,
                              jul_out + ".svg", "Julia set", "Re t", "Im t");
            }
            std::cout << "points = " << cloud.points.size()
                      << ", skipped = " << cloud.skipped << "\n";
        } else if (fp->parsed()) {
            const auto r = sm::find_fixed_point(fp_lo, fp_hi);
            sm::write_fixed_point_report(r.t_star, r.multiplier, fp_out);
            std::cout << "t_star = " << sm::format_g17(r.t_star)
                      << ", multiplier = " << sm::format_g17(r.multiplier) << "\n";
        } else if (tmp->parsed()) {
            const auto series = load_series(tmp_in, tmp_kind);
            sm::TemperatureParams p;
            p.window = tmp_window;
            p.dt = tmp_dt;
            p.trend_window = tmp_trend;
            p.threshold = tmp_threshold;
            p.sign_method = tmp_unsigned ? sm::SignMethod::always_positive
                                         : sm::SignMethod::volatility_trend;
            sm::write_temperature_csv(sm::estimate_temperature(series, p), tmp_out);
        } else if (ren->parsed()) {
            const auto series = load_series(ren_in, ren_kind);
            sm::BlockPartition part;
            if (ren_partition == "day") {
                part = sm::BlockPartition::by_day(series.timestamps);
            } else if (ren_partition.rfind("size:", 0) == 0) {
                part = sm::BlockPartition::fixed(
                    series.size(), static_cast<std::size_t>(sm::parse_int64(
                                       ren_partition.substr(5), "partition")));
            } else {
                sm::throw_validation("partition must be 'day' or 'size:B'");
            }
            sm::WeightProfile w = ren_weights == "uniform" || !series.has_volumes()
                                      ? sm::uniform_weights(part)
                                      : sm::block_weights_from_volume(series, part);
            const auto out = sm::renormalize_series(
                series, part, w,
                ren_mode == "open_close" ? sm::RenormMode::open_close_only
                                         : sm::RenormMode::weighted_all);
            sm::write_tick_csv(out, ren_out);
        } else if (det->parsed()) {
            sm::TemperatureStack stack;
            for (const auto& p : det_levels) {
                stack.levels.push_back(sm::parse_temperature_csv(p));
            }
            const auto events =
                sm::detect_transitions(stack, det_tol, det_floor);
            sm::write_events_csv(events, stack.levels.size(), det_out);
            std::cout << "events = " << events.size() << "\n";
        } else if (gbm->parsed()) {
            gp.t0_ms = gbm_t0;
            gp.volumes = gbm_volumes == "ushape" ? sm::VolumePattern::u_shape
                                                 : sm::VolumePattern::flat;
            gp.day_length = gbm_day_len;
            sm::write_tick_csv(sm::generate_gbm(gp), gbm_out);
        } else if (pipe->parsed()) {
            sm::RunConfig config;  // defaults
            if (!pipe_config.empty()) {
                sm::apply_config(config, sm::read_config_file(pipe_config));
            }
            // Environment seed overrides the config file...
            if (const char* env = std::getenv("SPINMARKET_SEED")) {
                config.seed =
                    static_cast<std::uint64_t>(sm::parse_int64(env, "SPINMARKET_SEED"));
            }
            // ...and explicit flags override both.
            auto take = [&](const char* flag, auto& into, const auto& parsed_value) {
                if (pipe->count(flag)) into = parsed_value;
            };
            take("--input", config.input_path, rc.input_path);
            take("--input-kind", config.input_kind, rc.input_kind);
            take("--window", config.window, rc.window);
            take("--trend-window", config.trend_window, rc.trend_window);
            take("--threshold", config.threshold, rc.threshold);
            take("--dt0", config.dt0, rc.dt0);
            take("--levels", config.levels, rc.levels);
            take("--partition", config.partition, rc.partition);
            take("--weights", config.weights, rc.weights);
            take("--renorm-mode", config.renorm_mode, rc.renorm_mode);
            take("--tolerance", config.tolerance, rc.tolerance);
            take("--floor", config.floor_value, rc.floor_value);
            take("--out-dir", config.out_dir, rc.out_dir);
            if (pipe_seed_opt->count()) config.seed = rc.seed;
            if (pipe_no_svg->count()) config.svg = false;
            const auto result = sm::run_pipeline(config);
            std::cout << "run complete: " << result.n_events << " events, manifest "
                      << result.manifest_path << "\n";
        }
    } catch (const sm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
