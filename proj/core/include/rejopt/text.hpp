#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rejopt {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<unsigned long long> parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text) noexcept;
std::vector<std::string_view> split(std::string_view text, char separator);

}  // namespace rejopt
