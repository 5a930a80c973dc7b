#pragma once

#include <optional>
#include <string>

namespace stabscore {

// Fixed-point rendering, rounded to nearest with exact ties to even.
std::string FormatFixed(double value, int decimals);

// "NA" for an absent value.
std::string FormatFixed(const std::optional<double>& value, int decimals);

// Three significant figures; scientific notation below 0.001.
std::string FormatPValue(double p);

// Shortest decimal string that parses back to the same double.
std::string FormatExact(double value);

}  // namespace stabscore
