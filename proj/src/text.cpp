#include "fockweyl/text.hpp"

#include <charconv>
#include <stdexcept>

namespace fockweyl::text {

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return {buf, end};
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not a number: '" + std::string(token) + "'");
  }
  return v;
}

int parse_int(std::string_view token) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(token) + "'");
  }
  return v;
}

namespace {

double parse_imag_coefficient(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_double(s);
}

}  // namespace

std::complex<double> parse_complex(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty complex number");
  if (token.back() != 'i') return {parse_double(token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string_view::npos) return {0.0, parse_imag_coefficient(body)};
  return {parse_double(body.substr(0, split_at)), parse_imag_coefficient(body.substr(split_at))};
}

std::string format_complex(std::complex<double> z) {
  std::string im = shortest(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return shortest(z.real()) + im + "i";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view token) {
  std::vector<double> out;
  for (auto part : split(token, ',')) out.push_back(parse_double(part));
  return out;
}

std::vector<std::complex<double>> parse_complex_list(std::string_view token) {
  std::vector<std::complex<double>> out;
  for (auto part : split(token, ',')) out.push_back(parse_complex(part));
  return out;
}

std::vector<std::vector<double>> parse_matrix(std::string_view token) {
  std::vector<std::vector<double>> rows;
  for (auto row : split(token, ';')) rows.push_back(parse_double_list(row));
  return rows;
}

}  // namespace fockweyl::text
