// Number formatting and parsing shared by the file formats and the CLI.

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace fockweyl::text {

/// Shortest decimal that parses back to the same double.
std::string shortest(double x);

/// Strict double parse: the whole token must be consumed.
double parse_double(std::string_view token);
int parse_int(std::string_view token);

/// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i"; no spaces.
std::complex<double> parse_complex(std::string_view token);
std::string format_complex(std::complex<double> z);

/// Comma-separated values.
std::vector<double> parse_double_list(std::string_view token);
std::vector<std::complex<double>> parse_complex_list(std::string_view token);

/// Rows separated by ';', entries by ','.
std::vector<std::vector<double>> parse_matrix(std::string_view token);

std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace fockweyl::text
