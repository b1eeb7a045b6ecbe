#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spinmarket {

// All floats in CSV output carry 17 significant digits (round-trip exact).
// Infinities serialize as "+inf"/"-inf".
std::string format_g17(double v);

// Shorter form used for SVG coordinates.
std::string format_g6(double v);

double parse_double(std::string_view text, const std::string& context);
std::int64_t parse_int64(std::string_view text, const std::string& context);

// FNV-1a 64-bit, used for manifest checksums.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex_u64(std::uint64_t v);

}  // namespace spinmarket
