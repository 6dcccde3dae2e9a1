#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace aletheia {

// "2026-08-10T12:00:00Z"
std::string to_iso8601(std::chrono::system_clock::time_point tp);
std::chrono::system_clock::time_point parse_iso8601(std::string_view text);
std::string now_iso8601();

// 446231 -> "446,231"
std::string with_thousands(std::uint64_t value);

// printf-style fixed-point rendering, e.g. format_fixed(0.956, 2) -> "0.96"
std::string format_fixed(double value, int decimals);

bool is_valid_utf8(std::string_view bytes);

std::string to_lower_ascii(std::string_view text);
std::string trim(std::string_view text);

} // namespace aletheia
