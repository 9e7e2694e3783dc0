#pragma once

#include <string>

#include "strahler/series.hpp"

namespace strahler {

// Nearest double to an exact rational.
double to_double(const Rational& q);

// "num/den", always with a denominator.
std::string format_rational(const Rational& q);

// 15 significant digits, shortest of fixed/scientific ("%.15g").
std::string format_real(double x);

}  // namespace strahler
