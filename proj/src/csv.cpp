#include "spinmarket/csv.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

#include "spinmarket/errors.hpp"
#include "spinmarket/format.hpp"

namespace spinmarket {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string_view strip_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // fixed \n line endings
    if (!out) throw_io("cannot write '" + path + "'");
    return out;
}

void expect_header(std::string_view got, std::string_view want,
                   const std::string& path) {
    if (strip_cr(got) != want) {
        throw_validation(path + " row 1: expected header '" + std::string(want) +
                         "', got '" + std::string(got) + "'");
    }
}

// Days since 1970-01-01 for a proleptic Gregorian date (civil-days algorithm).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) -
           719468;
}

std::int64_t parse_iso_date_ms(std::string_view text, const std::string& context) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw_validation(context + ": malformed date '" + std::string(text) + "'");
    }
    const int y = static_cast<int>(parse_int64(text.substr(0, 4), context));
    const int m = static_cast<int>(parse_int64(text.substr(5, 2), context));
    const int d = static_cast<int>(parse_int64(text.substr(8, 2), context));
    if (m < 1 || m > 12 || d < 1 || d > 31) {
        throw_validation(context + ": date out of range '" + std::string(text) + "'");
    }
    return days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d)) *
           86'400'000ll;
}

std::string format_iso_date(std::int64_t ms) {
    std::int64_t z = ms / 86'400'000ll + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u",
                  static_cast<long long>(y + (m <= 2)), m, d);
    return buf;
}

}  // namespace

PriceSeries parse_tick_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty file");
    expect_header(line, "timestamp,price,volume", path);

    PriceSeries series;
    series.level = 0;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const auto text = strip_cr(line);
        if (text.empty()) continue;
        const std::string ctx = path + " row " + std::to_string(row);
        const auto f = split_fields(text);
        if (f.size() != 3) throw_validation(ctx + ": expected 3 fields");
        const std::int64_t ts = parse_int64(f[0], ctx);
        const double price = parse_double(f[1], ctx);
        const double volume = parse_double(f[2], ctx);
        if (!(price > 0.0)) throw_validation(ctx + ": price must be > 0");
        if (!(volume >= 0.0)) throw_validation(ctx + ": volume must be >= 0");
        if (!series.timestamps.empty() && ts <= series.timestamps.back()) {
            throw_validation(ctx + ": timestamps must be strictly increasing");
        }
        series.timestamps.push_back(ts);
        series.prices.push_back(price);
        series.volumes.push_back(volume);
    }
    series.validate();
    return series;
}

PriceSeries parse_ohlcv_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty file");
    expect_header(line, "date,open,high,low,close,volume", path);

    PriceSeries series;
    series.level = 0;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const auto text = strip_cr(line);
        if (text.empty()) continue;
        const std::string ctx = path + " row " + std::to_string(row);
        const auto f = split_fields(text);
        if (f.size() != 6) throw_validation(ctx + ": expected 6 fields");
        const std::int64_t ts = parse_iso_date_ms(f[0], ctx);
        const double open = parse_double(f[1], ctx);
        const double high = parse_double(f[2], ctx);
        const double low = parse_double(f[3], ctx);
        const double close = parse_double(f[4], ctx);
        const double volume = parse_double(f[5], ctx);
        if (!(low > 0.0)) throw_validation(ctx + ": prices must be > 0");
        if (low > high) throw_validation(ctx + ": low exceeds high");
        if (open < low || open > high) {
            throw_validation(ctx + ": open outside [low, high]");
        }
        if (close < low || close > high) {
            throw_validation(ctx + ": close outside [low, high]");
        }
        if (!(volume >= 0.0)) throw_validation(ctx + ": volume must be >= 0");
        if (!series.timestamps.empty() && ts <= series.timestamps.back()) {
            throw_validation(ctx + ": dates must be strictly increasing");
        }
        series.timestamps.push_back(ts);
        series.prices.push_back(close);
        series.volumes.push_back(volume);
        series.opens.push_back(open);
        series.closes.push_back(close);
        series.highs.push_back(high);
        series.lows.push_back(low);
    }
    series.validate();
    return series;
}

std::string serialize_ohlcv_csv(const PriceSeries& series) {
    if (series.opens.size() != series.size() || series.highs.size() != series.size() ||
        series.lows.size() != series.size() || series.closes.size() != series.size()) {
        throw_validation("series lacks OHLC fields");
    }
    std::ostringstream out;
    out << "date,open,high,low,close,volume\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_iso_date(series.timestamps[i]) << ',' << format_g17(series.opens[i])
            << ',' << format_g17(series.highs[i]) << ',' << format_g17(series.lows[i])
            << ',' << format_g17(series.closes[i]) << ','
            << format_g17(series.has_volumes() ? series.volumes[i] : 0.0) << '\n';
    }
    return out.str();
}

std::string serialize_tick_csv(const PriceSeries& series) {
    std::ostringstream out;
    out << "timestamp,price,volume\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double vol = series.has_volumes() ? series.volumes[i] : 0.0;
        out << series.timestamps[i] << ',' << format_g17(series.prices[i]) << ','
            << format_g17(vol) << '\n';
    }
    return out.str();
}

void write_tick_csv(const PriceSeries& series, const std::string& path) {
    auto out = open_output(path);
    out << serialize_tick_csv(series);
}

void write_trace_csv(const ScenarioTrace& trace, const std::string& path) {
    auto out = open_output(path);
    out << "step,magnetization,field_h,beta_eff\n";
    for (const auto& s : trace.steps) {
        out << s.step << ',' << format_g17(s.magnetization) << ','
            << format_g17(s.field_h) << ',' << format_g17(s.beta_eff.value) << '\n';
    }
}

void write_entropy_csv(const EntropyCurve& curve, const std::string& path) {
    auto out = open_output(path);
    out << "energy_per_spin,entropy_per_spin\n";
    for (const auto& p : curve.points) {
        out << format_g17(p.energy_per_spin) << ',' << format_g17(p.entropy_per_spin)
            << '\n';
    }
}

void write_loop_csv(const HysteresisLoop& loop, const std::string& path) {
    auto out = open_output(path);
    out << "field_h,mean_magnetization,branch\n";
    for (const auto& [h, m] : loop.branch_down) {
        out << format_g17(h) << ',' << format_g17(m) << ",down\n";
    }
    for (const auto& [h, m] : loop.branch_up) {
        out << format_g17(h) << ',' << format_g17(m) << ",up\n";
    }
}

void write_complex_csv(const std::vector<std::complex<double>>& points,
                       const std::string& path) {
    auto out = open_output(path);
    out << "re,im\n";
    for (const auto& z : points) {
        out << format_g17(z.real()) << ',' << format_g17(z.imag()) << '\n';
    }
}

void write_fixed_point_report(double t_star, double multiplier,
                              const std::string& path) {
    auto out = open_output(path);
    out << "t_star=" << format_g17(t_star) << "\n"
        << "multiplier=" << format_g17(multiplier) << "\n";
}

void write_temperature_csv(const TemperatureSeries& series, const std::string& path) {
    auto out = open_output(path);
    out << "timestamp,temperature,level\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.timestamps[i] << ',';
        if (series.temperatures[i].has_value()) out << format_g17(*series.temperatures[i]);
        out << ',' << series.level << '\n';
    }
}

TemperatureSeries parse_temperature_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty file");
    expect_header(line, "timestamp,temperature,level", path);
    TemperatureSeries series;
    bool level_set = false;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const auto text = strip_cr(line);
        if (text.empty()) continue;
        const std::string ctx = path + " row " + std::to_string(row);
        const auto f = split_fields(text);
        if (f.size() != 3) throw_validation(ctx + ": expected 3 fields");
        series.timestamps.push_back(parse_int64(f[0], ctx));
        if (f[1].empty()) {
            series.temperatures.push_back(std::nullopt);
        } else {
            series.temperatures.push_back(parse_double(f[1], ctx));
        }
        const int level = static_cast<int>(parse_int64(f[2], ctx));
        if (!level_set) {
            series.level = level;
            level_set = true;
        } else if (level != series.level) {
            throw_validation(ctx + ": mixed levels in one file");
        }
    }
    return series;
}

void write_price_csv(const PriceSeries& series, const std::string& path) {
    auto out = open_output(path);
    out << "timestamp,price\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.timestamps[i] << ',' << format_g17(series.prices[i]) << '\n';
    }
}

void write_alignment_csv(const std::vector<TemperatureStack::Alignment>& alignment,
                         const std::string& path) {
    auto out = open_output(path);
    out << "level,ts,level0_block_start,level0_block_end\n";
    for (const auto& a : alignment) {
        out << a.level << ',' << a.timestamp << ',' << a.level0_begin << ','
            << a.level0_end << '\n';
    }
}

std::vector<TemperatureStack::Alignment> parse_alignment_csv(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty file");
    expect_header(line, "level,ts,level0_block_start,level0_block_end", path);
    std::vector<TemperatureStack::Alignment> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const auto text = strip_cr(line);
        if (text.empty()) continue;
        const std::string ctx = path + " row " + std::to_string(row);
        const auto f = split_fields(text);
        if (f.size() != 4) throw_validation(ctx + ": expected 4 fields");
        TemperatureStack::Alignment a;
        a.level = static_cast<int>(parse_int64(f[0], ctx));
        a.timestamp = parse_int64(f[1], ctx);
        a.level0_begin = static_cast<std::size_t>(parse_int64(f[2], ctx));
        a.level0_end = static_cast<std::size_t>(parse_int64(f[3], ctx));
        out.push_back(a);
    }
    return out;
}

void write_events_csv(const std::vector<SignalEvent>& events, std::size_t n_levels,
                      const std::string& path) {
    auto out = open_output(path);
    out << "timestamp,spread";
    for (std::size_t k = 0; k < n_levels; ++k) out << ",T" << k;
    out << '\n';
    for (const auto& ev : events) {
        out << ev.timestamp << ',' << format_g17(ev.relative_spread);
        for (double v : ev.level_values) out << ',' << format_g17(v);
        out << '\n';
    }
}

}  // namespace spinmarket
