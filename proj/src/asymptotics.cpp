#include "strahler/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <mpfr.h>

#include "strahler/errors.hpp"
#include "strahler/numeric_format.hpp"
#include "strahler/registers.hpp"
#include "strahler/special_functions.hpp"

namespace strahler::asymptotics {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

Integer two_pow_plus_one(unsigned j) {
  Integer v = 1;
  v <<= j;
  return v + 1;
}

}  // namespace

Rational lambda(unsigned p) {
  if (p == 0) throw DomainError("lambda: p must be at least 1");
  Integer bracket = 4;
  Integer product = 1;  // prod_{j<h} (2^j + 1)
  for (unsigned h = 1; h < p; ++h) {
    product *= two_pow_plus_one(h - 1);
    Integer term = product;
    term <<= h;
    bracket += 3 * term;
  }
  product *= two_pow_plus_one(p - 1);
  Rational out(bracket, product);
  out.canonicalize();
  return out;
}

Rational lambda_gap_ratio(unsigned p) {
  const Rational gap = 3 - lambda(p);
  if (sgn(gap) == 0) throw DomainError("lambda_gap_ratio: lambda_p equals 3");
  Rational out = (3 - lambda(p + 1)) / gap;
  out.canonicalize();
  return out;
}

Complex Lambda_dominant(Complex s) {
  const Complex denom = std::exp(s * kLn2) - 1.0;
  if (std::abs(denom) < 1e-14) throw DomainError("Lambda_dominant: pole where 2^s = 1");
  return 3.0 / denom;
}

Complex Lambda_direct(Complex s, unsigned terms) {
  Complex sum = 0.0;
  for (unsigned p = 1; p <= terms; ++p) {
    sum += to_double(lambda(p)) * std::exp(-static_cast<double>(p) * s * kLn2);
  }
  return sum;
}

Complex chi(int k) { return Complex(0.0, 2.0 * kPi * k / kLn2); }

double constant_c() {
  return 0.5 + std::log2(kPi) - std::numbers::egamma / (2.0 * kLn2) - 1.0 / kLn2;
}

std::string constant_c_digits(int digits) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
  mpfr_t c, pi, euler, ln2, tmp;
  mpfr_inits2(prec, c, pi, euler, ln2, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_const_euler(euler, MPFR_RNDN);
  mpfr_const_log2(ln2, MPFR_RNDN);

  mpfr_set_d(c, 0.5, MPFR_RNDN);
  mpfr_log2(tmp, pi, MPFR_RNDN);
  mpfr_add(c, c, tmp, MPFR_RNDN);
  mpfr_div(tmp, euler, ln2, MPFR_RNDN);
  mpfr_div_ui(tmp, tmp, 2, MPFR_RNDN);
  mpfr_sub(c, c, tmp, MPFR_RNDN);
  mpfr_ui_div(tmp, 1, ln2, MPFR_RNDN);
  mpfr_sub(c, c, tmp, MPFR_RNDN);

  char* text = nullptr;
  mpfr_asprintf(&text, "%.*Rg", digits, c);
  std::string out(text);
  mpfr_free_str(text);
  mpfr_clears(c, pi, euler, ln2, tmp, static_cast<mpfr_ptr>(nullptr));
  return out;
}

FluctuationSpec FluctuationSpec::build(unsigned harmonics) {
  if (harmonics == 0) throw DomainError("FluctuationSpec: at least one harmonic is required");
  FluctuationSpec spec;
  spec.harmonics = harmonics;
  for (unsigned k = 1; k <= harmonics; ++k) {
    const Complex x = chi(static_cast<int>(k));
    spec.coeffs.push_back(special::czeta(x) * special::cgamma(x / 2.0) * (x - 1.0) / kLn2);
  }
  return spec;
}

double psi(double x, const FluctuationSpec& spec) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= spec.coeffs.size(); ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) * x;
    sum += (spec.coeffs[k - 1] * Complex(std::cos(angle), std::sin(angle))).real();
  }
  return 2.0 * sum;
}

double psi_amplitude(const FluctuationSpec& spec, std::size_t samples) {
  double amplitude = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    amplitude = std::max(amplitude, std::abs(psi(static_cast<double>(i) / samples, spec)));
  }
  return amplitude;
}

double log4(double n) { return std::log2(n) / 2.0; }

double smooth_average(std::size_t n) { return log4(static_cast<double>(n)) + constant_c(); }

double asymptotic_average(std::size_t n, const FluctuationSpec& spec) {
  if (n < 2) throw DomainError("asymptotic_average: n must be at least 2");
  return smooth_average(n) + psi(log4(static_cast<double>(n)), spec);
}

AsymptoticReport compare(std::span<const std::size_t> n_list, const FluctuationSpec& spec) {
  AsymptoticReport report;
  if (n_list.empty()) return report;
  const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
  const registers::AverageTable butterfly(registers::Family::Butterfly, n_max);
  const registers::AverageTable classical(registers::Family::Classical, n_max);
  for (std::size_t n : n_list) {
    ReportRow row;
    row.n = n;
    row.exact = butterfly.average(n);
    row.exact_value = to_double(row.exact);
    row.smooth = smooth_average(n);
    row.psi = psi(log4(static_cast<double>(n)), spec);
    row.residual = row.exact_value - row.smooth - row.psi;
    row.classical = classical.average(n);
    row.classical_value = to_double(row.classical);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace strahler::asymptotics
