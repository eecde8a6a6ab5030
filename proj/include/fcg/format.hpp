#pragma once

#include <span>
#include <string>

namespace fcg {

// printf-style %.*g; negative zero prints as "0".
[[nodiscard]] std::string format_g(double v, int significant = 6);

// "[a, b, c]" with format_g entries.
[[nodiscard]] std::string format_vector(std::span<const double> v, int significant = 10);

// RFC 4180 quoting for a CSV field: quoted when it contains a comma,
// quote or line break.
[[nodiscard]] std::string csv_field(const std::string& s);

} // namespace fcg
