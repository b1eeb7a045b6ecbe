#pragma once

#include <complex>
#include <string>
#include <vector>

#include "spinmarket/blocks.hpp"
#include "spinmarket/detector.hpp"
#include "spinmarket/renorm_map.hpp"
#include "spinmarket/series.hpp"
#include "spinmarket/spin.hpp"

namespace spinmarket {

// --- readers ---------------------------------------------------------------

/// Header `timestamp,price,volume`; rows strictly increasing in time.
/// Parse failures name the offending row (header is row 1).
PriceSeries parse_tick_csv(const std::string& path);

/// Header `date,open,high,low,close,volume` with ISO dates. Closes become
/// the price series; opens/closes are retained per row.
PriceSeries parse_ohlcv_csv(const std::string& path);

// --- writers (all floats at 17 significant digits) --------------------------

std::string serialize_tick_csv(const PriceSeries& series);
void write_tick_csv(const PriceSeries& series, const std::string& path);
std::string serialize_ohlcv_csv(const PriceSeries& series);

/// `step,magnetization,field_h,beta_eff`; divergence markers as +inf/-inf.
void write_trace_csv(const ScenarioTrace& trace, const std::string& path);

/// `energy_per_spin,entropy_per_spin`
void write_entropy_csv(const EntropyCurve& curve, const std::string& path);

/// `field_h,mean_magnetization,branch` along the traversed path.
void write_loop_csv(const HysteresisLoop& loop, const std::string& path);

/// `re,im`
void write_complex_csv(const std::vector<std::complex<double>>& points,
                       const std::string& path);

/// `t_star=...` / `multiplier=...`
void write_fixed_point_report(double t_star, double multiplier,
                              const std::string& path);

/// `timestamp,temperature,level`; warm-up rows keep the field empty.
void write_temperature_csv(const TemperatureSeries& series, const std::string& path);

/// `timestamp,price`
void write_price_csv(const PriceSeries& series, const std::string& path);

/// `level,ts,level0_block_start,level0_block_end`
void write_alignment_csv(const std::vector<TemperatureStack::Alignment>& alignment,
                         const std::string& path);
std::vector<TemperatureStack::Alignment> parse_alignment_csv(const std::string& path);

/// `timestamp,spread,T0,T1,...`
void write_events_csv(const std::vector<SignalEvent>& events, std::size_t n_levels,
                      const std::string& path);

/// Reads `timestamp,temperature,level` back into a TemperatureSeries.
TemperatureSeries parse_temperature_csv(const std::string& path);

}  // namespace spinmarket
