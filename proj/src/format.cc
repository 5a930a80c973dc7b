#include "stabscore/format.h"

#include <cmath>

#include "fmt/format.h"

namespace stabscore {

std::string FormatFixed(double value, int decimals) {
  std::string out = fmt::format("{:.{}f}", value, decimals);
  // Avoid "-0.0000" for tiny negatives that round to zero.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string FormatFixed(const std::optional<double>& value, int decimals) {
  return value ? FormatFixed(*value, decimals) : std::string("NA");
}

std::string FormatPValue(double p) {
  if (std::isnan(p)) return "NA";
  if (p < 0.001) return fmt::format("{:.2e}", p);
  const int exponent = static_cast<int>(std::floor(std::log10(p)));
  return fmt::format("{:.{}f}", p, 2 - exponent);
}

std::string FormatExact(double value) { return fmt::format("{}", value); }

}  // namespace stabscore
