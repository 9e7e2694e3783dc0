#include "strahler/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "strahler/errors.hpp"

namespace strahler::special {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// B_2, B_4, ..., B_24 divided by (2k)!.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1124000727777607680000.0,
    -236364091.0 / 2730.0 / 620448401733239439360000.0};

bool is_pole(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

}  // namespace

Complex clgamma(Complex s) {
  if (s.real() < 0.5) throw DomainError("clgamma: implemented for Re s >= 1/2 only");
  Complex y = s;
  Complex series = 0.999999999999997092;
  for (double c : kLanczos) {
    y += 1.0;
    series += c / y;
  }
  const Complex t = s + (kLanczosG + 0.5);
  return (s + 0.5) * std::log(t) - t + std::log(2.5066282746310005 * series / s);
}

Complex cgamma(Complex s) {
  if (is_pole(s)) throw DomainError("cgamma: pole at a nonpositive integer");
  if (s.real() < 0.5) {
    // Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return kPi / (std::sin(kPi * s) * cgamma(1.0 - s));
  }
  return std::exp(clgamma(s));
}

Complex czeta(Complex s, const ZetaOptions& options) {
  if (s == Complex(1.0, 0.0)) throw DomainError("czeta: pole at s = 1");
  if (options.bernoulli_terms < 0 || options.bernoulli_terms > 12 || options.terms < 1) {
    throw DomainError("czeta: unsupported cutoffs");
  }
  const int n = std::max(options.terms, static_cast<int>(std::ceil(std::abs(s.imag()))));

  Complex sum = 0.0;
  for (int k = 1; k < n; ++k) sum += std::pow(static_cast<double>(k), -s);

  const double big_n = n;
  const Complex n_pow = std::pow(big_n, -s);
  sum += big_n * n_pow / (s - 1.0) + 0.5 * n_pow;

  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  Complex rising = s;          // s(s+1)...(s+2k-2)
  Complex power = n_pow / big_n;  // N^(-s-2k+1)
  for (int k = 1; k <= options.bernoulli_terms; ++k) {
    sum += kBernoulliOverFactorial[k - 1] * rising * power;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= big_n * big_n;
  }
  return sum;
}

}  // namespace strahler::special
