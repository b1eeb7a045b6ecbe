#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinmarket/blocks.hpp"
#include "spinmarket/csv.hpp"
#include "spinmarket/detector.hpp"
#include "spinmarket/errors.hpp"
#include "spinmarket/gbm.hpp"
#include "spinmarket/partition.hpp"
#include "spinmarket/pipeline.hpp"
#include "spinmarket/renorm_map.hpp"
#include "spinmarket/roots.hpp"
#include "spinmarket/series.hpp"
#include "spinmarket/spin.hpp"

namespace py = pybind11;
using namespace spinmarket;

PYBIND11_MODULE(_core, m) {
    m.doc() = "spin-system Monte Carlo, partition-function zeros and the "
              "market temperature/renormalization pipeline";

    py::register_exception<Error>(m, "SpinmarketError");

    // ---- spin lab ----------------------------------------------------------
    py::class_<SpinSystem>(m, "SpinSystem")
        .def(py::init([](int n, double j, double h, double beta, std::uint64_t seed,
                         int direction) {
                 return SpinSystem::aligned(n, j, h, beta, seed, direction);
             }),
             py::arg("n_sites"), py::arg("coupling_j"), py::arg("field_h"),
             py::arg("beta"), py::arg("rng_seed"), py::arg("direction") = 1)
        .def_readwrite("n_sites", &SpinSystem::n_sites)
        .def_readwrite("coupling_j", &SpinSystem::coupling_j)
        .def_readwrite("field_h", &SpinSystem::field_h)
        .def_readwrite("beta", &SpinSystem::beta)
        .def_readwrite("spins", &SpinSystem::spins)
        .def_readwrite("rng_seed", &SpinSystem::rng_seed)
        .def("magnetization", &SpinSystem::magnetization)
        .def("energy_per_spin", &SpinSystem::energy_per_spin);

    py::class_<BetaEff>(m, "BetaEff")
        .def_readonly("value", &BetaEff::value)
        .def("is_marker", &BetaEff::is_marker);
    py::class_<TraceStep>(m, "TraceStep")
        .def_readonly("step", &TraceStep::step)
        .def_readonly("magnetization", &TraceStep::magnetization)
        .def_readonly("field_h", &TraceStep::field_h)
        .def_readonly("beta_eff", &TraceStep::beta_eff);
    py::class_<ScenarioTrace>(m, "ScenarioTrace")
        .def_readonly("steps", &ScenarioTrace::steps);
    py::class_<EntropyCurvePoint>(m, "EntropyCurvePoint")
        .def_readonly("energy_per_spin", &EntropyCurvePoint::energy_per_spin)
        .def_readonly("entropy_per_spin", &EntropyCurvePoint::entropy_per_spin);
    py::class_<EntropyCurve>(m, "EntropyCurve")
        .def_readonly("points", &EntropyCurve::points)
        .def_readonly("coupling_j", &EntropyCurve::coupling_j)
        .def_readonly("n_sites", &EntropyCurve::n_sites);
    py::class_<HysteresisLoop>(m, "HysteresisLoop")
        .def_readonly("branch_down", &HysteresisLoop::branch_down)
        .def_readonly("branch_up", &HysteresisLoop::branch_up)
        .def_readonly("loop_area", &HysteresisLoop::loop_area);

    m.def("metropolis_sweep", &metropolis_sweep, py::arg("system"),
          py::arg("n_sweeps"));
    m.def("entropy_curve", &entropy_curve, py::arg("coupling_j"), py::arg("field_h"),
          py::arg("n_sites"));
    m.def("hysteresis_loop", &hysteresis_loop, py::arg("system"), py::arg("h_max"),
          py::arg("n_field_steps"), py::arg("sweeps_per_step"),
          py::arg("start_down") = true);
    m.def("population_inversion_run", &population_inversion_run, py::arg("system"),
          py::arg("flip_time"), py::arg("total_steps"));
    m.def("magnetocaloric_run", &magnetocaloric_run, py::arg("initial_beta"),
          py::arg("initial_h"), py::arg("n_ramp_steps"));

    // ---- partition zeros and the renormalization map ------------------------
    py::class_<PartitionPolynomial>(m, "PartitionPolynomial")
        .def_readonly("coefficients", &PartitionPolynomial::coefficients)
        .def_readonly("coupling_k", &PartitionPolynomial::coupling_k)
        .def_readonly("n_sites", &PartitionPolynomial::n_sites)
        .def_readonly("log_scale", &PartitionPolynomial::log_scale)
        .def("degree", &PartitionPolynomial::degree);
    py::class_<ZeroSet>(m, "ZeroSet")
        .def_readonly("zeros", &ZeroSet::zeros)
        .def_readonly("residual_bound", &ZeroSet::residual_bound)
        .def_readonly("iterations", &ZeroSet::iterations);
    py::class_<FixedPointResult>(m, "FixedPointResult")
        .def_readonly("t_star", &FixedPointResult::t_star)
        .def_readonly("multiplier", &FixedPointResult::multiplier);
    py::class_<JuliaCloud>(m, "JuliaCloud")
        .def_readonly("points", &JuliaCloud::points)
        .def_readonly("parents", &JuliaCloud::parents)
        .def_readonly("generations", &JuliaCloud::generations)
        .def_readonly("skipped", &JuliaCloud::skipped);

    m.def("chain_partition_polynomial", &chain_partition_polynomial,
          py::arg("coupling_k"), py::arg("n_sites"));
    m.def("find_zeros", &find_zeros, py::arg("poly"), py::arg("tol") = 1e-10);
    m.def("dhl_renorm_apply",
          py::overload_cast<double>(&dhl_renorm_apply), py::arg("t"));
    m.def("dhl_renorm_apply_complex",
          py::overload_cast<std::complex<double>>(&dhl_renorm_apply), py::arg("t"));
    m.def("find_fixed_point", py::overload_cast<double, double>(&find_fixed_point),
          py::arg("lo"), py::arg("hi"));
    m.def("julia_inverse_iteration",
          py::overload_cast<std::complex<double>, int, std::size_t, std::uint64_t>(
              &julia_inverse_iteration),
          py::arg("seed_point"), py::arg("generations"), py::arg("cap"),
          py::arg("rng_seed") = 0);

    // ---- market thermometer and renormalization ------------------------------
    py::class_<PriceSeries>(m, "PriceSeries")
        .def(py::init<>())
        .def_readwrite("timestamps", &PriceSeries::timestamps)
        .def_readwrite("prices", &PriceSeries::prices)
        .def_readwrite("volumes", &PriceSeries::volumes)
        .def_readwrite("level", &PriceSeries::level)
        .def("__len__", [](const PriceSeries& s) { return s.size(); });
    py::enum_<SignMethod>(m, "SignMethod")
        .value("volatility_trend", SignMethod::volatility_trend)
        .value("always_positive", SignMethod::always_positive);
    py::class_<TemperatureSeries>(m, "TemperatureSeries")
        .def_readonly("timestamps", &TemperatureSeries::timestamps)
        .def_readonly("temperatures", &TemperatureSeries::temperatures)
        .def_readonly("level", &TemperatureSeries::level)
        .def_readonly("window", &TemperatureSeries::window);
    py::class_<TemperatureParams>(m, "TemperatureParams")
        .def(py::init<>())
        .def_readwrite("window", &TemperatureParams::window)
        .def_readwrite("dt", &TemperatureParams::dt)
        .def_readwrite("trend_window", &TemperatureParams::trend_window)
        .def_readwrite("threshold", &TemperatureParams::threshold)
        .def_readwrite("sign_method", &TemperatureParams::sign_method);

    m.def("log_returns", &log_returns, py::arg("series"));
    m.def("estimate_temperature",
          py::overload_cast<const PriceSeries&, const TemperatureParams&>(
              &estimate_temperature),
          py::arg("series"), py::arg("params"));
    m.def(
        "assign_sign",
        [](const std::vector<double>& xs, int trend_window, double threshold) {
            return assign_sign(xs, trend_window, threshold);
        },
        py::arg("abs_temps"), py::arg("trend_window"), py::arg("threshold"));

    py::class_<BlockPartition>(m, "BlockPartition")
        .def_static("fixed", &BlockPartition::fixed, py::arg("n_samples"),
                    py::arg("block_size"))
        .def_static("singletons", &BlockPartition::singletons, py::arg("n_samples"))
        .def_static(
            "by_day",
            [](const std::vector<std::int64_t>& ts) {
                return BlockPartition::by_day(ts);
            },
            py::arg("timestamps_ms"))
        .def("block_count", &BlockPartition::block_count);
    py::class_<WeightProfile>(m, "WeightProfile")
        .def_readonly("weights_per_block", &WeightProfile::weights_per_block);
    py::enum_<RenormMode>(m, "RenormMode")
        .value("weighted_all", RenormMode::weighted_all)
        .value("open_close_only", RenormMode::open_close_only);
    py::enum_<WeightSource>(m, "WeightSource")
        .value("volume", WeightSource::volume)
        .value("uniform", WeightSource::uniform);
    py::class_<TemperatureStack::Alignment>(m, "Alignment")
        .def_readonly("level", &TemperatureStack::Alignment::level)
        .def_readonly("timestamp", &TemperatureStack::Alignment::timestamp)
        .def_readonly("level0_begin", &TemperatureStack::Alignment::level0_begin)
        .def_readonly("level0_end", &TemperatureStack::Alignment::level0_end);
    py::class_<TemperatureStack>(m, "TemperatureStack")
        .def_readonly("levels", &TemperatureStack::levels)
        .def_readonly("alignment", &TemperatureStack::alignment);
    py::class_<StackParams>(m, "StackParams")
        .def(py::init<>())
        .def_readwrite("temperature", &StackParams::temperature)
        .def_readwrite("dt_per_level", &StackParams::dt_per_level)
        .def_readwrite("weights", &StackParams::weights)
        .def_readwrite("mode", &StackParams::mode);

    m.def("block_weights_from_volume", &block_weights_from_volume, py::arg("series"),
          py::arg("partition"));
    m.def("uniform_weights", &uniform_weights, py::arg("partition"));
    m.def("renormalize_series", &renormalize_series, py::arg("series"),
          py::arg("partition"), py::arg("weights"),
          py::arg("mode") = RenormMode::weighted_all);
    m.def("temperature_stack",
          py::overload_cast<const PriceSeries&, const std::vector<BlockPartition>&,
                            const StackParams&>(&temperature_stack),
          py::arg("series"), py::arg("partitions"), py::arg("params"));

    // ---- detector, synthetic data, pipeline ----------------------------------
    py::class_<SignalEvent>(m, "SignalEvent")
        .def_readonly("timestamp", &SignalEvent::timestamp)
        .def_readonly("level_values", &SignalEvent::level_values)
        .def_readonly("level_timestamps", &SignalEvent::level_timestamps)
        .def_readonly("relative_spread", &SignalEvent::relative_spread);
    m.def("detect_transitions", &detect_transitions, py::arg("stack"),
          py::arg("tolerance"), py::arg("floor_value"));

    m.def(
        "generate_gbm",
        [](double s0, double mu, double sigma, double dt, std::size_t n,
           std::uint64_t seed) { return generate_gbm(s0, mu, sigma, dt, n, seed); },
        py::arg("s0"), py::arg("mu"), py::arg("sigma"), py::arg("dt"), py::arg("n"),
        py::arg("seed"));

    m.def("parse_tick_csv", &parse_tick_csv, py::arg("path"));
    m.def("parse_ohlcv_csv", &parse_ohlcv_csv, py::arg("path"));
    m.def("write_tick_csv", &write_tick_csv, py::arg("series"), py::arg("path"));

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("input_path", &RunConfig::input_path)
        .def_readwrite("input_kind", &RunConfig::input_kind)
        .def_readwrite("window", &RunConfig::window)
        .def_readwrite("trend_window", &RunConfig::trend_window)
        .def_readwrite("threshold", &RunConfig::threshold)
        .def_readwrite("dt0", &RunConfig::dt0)
        .def_readwrite("levels", &RunConfig::levels)
        .def_readwrite("partition", &RunConfig::partition)
        .def_readwrite("weights", &RunConfig::weights)
        .def_readwrite("renorm_mode", &RunConfig::renorm_mode)
        .def_readwrite("tolerance", &RunConfig::tolerance)
        .def_readwrite("floor_value", &RunConfig::floor_value)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("svg", &RunConfig::svg);
    py::class_<RunResult>(m, "RunResult")
        .def_readonly("manifest_path", &RunResult::manifest_path)
        .def_readonly("n_events", &RunResult::n_events)
        .def_readonly("outputs", &RunResult::outputs);
    m.def("run_pipeline", &run_pipeline, py::arg("config"));
}
