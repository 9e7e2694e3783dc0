#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "strahler/series.hpp"

// Asymptotics of the average register function of butterfly trees:
//   log4(n) + c + psi(log4(n)) + o(1)
// with c = 1/2 + log2(pi) - gamma/(2 log 2) - 1/log 2 and psi of period 1.
namespace strahler::asymptotics {

using Complex = std::complex<double>;

// lambda_p = [4 + 3 sum_{h=1}^{p-1} 2^h prod_{j<h}(2^j+1)] / prod_{j<p}(2^j+1),
// the bracket of the T_p closed form at u = 1. p >= 1.
Rational lambda(unsigned p);
// (3 - lambda_{p+1}) / (3 - lambda_p).
Rational lambda_gap_ratio(unsigned p);

// Dominant part 3/(2^s - 1) of Lambda(s) = sum_p lambda_p 2^(-ps).
Complex Lambda_dominant(Complex s);
// sum_{p=1}^{terms} lambda_p 2^(-ps); converges for Re s > 0.
Complex Lambda_direct(Complex s, unsigned terms);

// chi_k = 2 k pi i / log 2.
Complex chi(int k);

double constant_c();
// c to the requested number of significant digits, via MPFR.
std::string constant_c_digits(int digits = 30);

inline constexpr unsigned kDefaultHarmonics = 5;

// Fourier data of psi: coeffs[k-1] = zeta(chi_k) Gamma(chi_k/2) (chi_k - 1) / log 2.
struct FluctuationSpec {
  unsigned harmonics = 0;
  std::vector<Complex> coeffs;

  static FluctuationSpec build(unsigned harmonics = kDefaultHarmonics);
};

// psi(x) = 2 sum_{k=1}^{K} Re(coeff_k e^{2 pi i k x}).
double psi(double x, const FluctuationSpec& spec);
// max |psi| over `samples` equally spaced points of [0, 1).
double psi_amplitude(const FluctuationSpec& spec, std::size_t samples = 4096);

double log4(double n);
// log4(n) + c
double smooth_average(std::size_t n);
// log4(n) + c + psi(log4(n)), n >= 2.
double asymptotic_average(std::size_t n, const FluctuationSpec& spec);

struct ReportRow {
  std::size_t n = 0;
  Rational exact;           // butterfly trees
  double exact_value = 0;
  double smooth = 0;
  double psi = 0;
  double residual = 0;      // exact - smooth - psi
  Rational classical;       // binary trees, same size
  double classical_value = 0;
};

struct AsymptoticReport {
  std::vector<ReportRow> rows;
};

// Exact averages (via the Lagrange fast path) against the asymptotic formula.
AsymptoticReport compare(std::span<const std::size_t> n_list, const FluctuationSpec& spec);

}  // namespace strahler::asymptotics
