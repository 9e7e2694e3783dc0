#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "strahler/asymptotics.hpp"
#include "strahler/errors.hpp"
#include "strahler/special_functions.hpp"

using namespace strahler;
using namespace strahler::asymptotics;
using special::cgamma;
using special::czeta;

namespace {

constexpr double kPi = std::numbers::pi;

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("gamma") {
  CHECK(close(cgamma(0.5), std::sqrt(kPi), 1e-13));
  CHECK(close(cgamma(5.0), 24.0, 1e-11));
  CHECK(close(cgamma(1.0), 1.0, 1e-14));
  CHECK(close(cgamma(-0.5), -2.0 * std::sqrt(kPi), 1e-12));
  CHECK_THROWS_AS(cgamma(0.0), DomainError);
  CHECK_THROWS_AS(cgamma(-3.0), DomainError);

  SUBCASE("modulus on the line Re s = 1") {
    for (double t : {0.5, 3.0, 9.0647, 18.1294, 30.0}) {
      const double expected = std::sqrt(kPi * t / std::sinh(kPi * t));
      CHECK(std::abs(std::abs(cgamma(Complex(1.0, t))) / expected - 1.0) <= 1e-10);
    }
    CHECK(std::abs(cgamma(Complex(1.0, 9.0647))) ==
          doctest::Approx(4.9423726150245714e-6).epsilon(1e-10));
  }
  SUBCASE("recurrence on a grid") {
    for (double re = 0.5; re <= 5.0; re += 0.5) {
      for (double im = -20.0; im <= 20.0; im += 2.5) {
        const Complex s(re, im);
        const Complex lhs = cgamma(s + 1.0);
        const Complex rhs = s * cgamma(s);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
  SUBCASE("reflection") {
    for (double im : {0.3, 4.0, 12.0}) {
      const Complex s(0.25, im);
      const Complex lhs = cgamma(s) * cgamma(1.0 - s);
      const Complex rhs = kPi / std::sin(kPi * s);
      CHECK(std::abs(lhs / rhs - 1.0) <= 1e-11);
    }
  }
}

TEST_CASE("zeta") {
  CHECK(close(czeta(2.0), kPi * kPi / 6.0, 1e-10));
  CHECK(close(czeta(0.0), -0.5, 1e-10));
  CHECK(close(czeta(-1.0), -1.0 / 12.0, 1e-10));
  CHECK(close(czeta(4.0), std::pow(kPi, 4) / 90.0, 1e-10));
  CHECK(close(czeta(Complex(0.0, 9.0647)), Complex(1.5987294086012267, 0.27834497361222919), 1e-10));
  CHECK_THROWS_AS(czeta(1.0), DomainError);

  SUBCASE("functional equation along Re s = 0") {
    for (double t = -30.0; t <= 30.0; t += 1.25) {
      if (std::abs(t) < 1e-9) continue;
      const Complex s(0.0, t);
      const Complex rhs = std::pow(Complex(2.0), s) * std::pow(Complex(kPi), s - 1.0) *
                          std::sin(kPi * s / 2.0) * cgamma(1.0 - s) * czeta(1.0 - s);
      CHECK(std::abs(czeta(s) - rhs) <= 1e-8);
    }
  }
}

TEST_CASE("lambda") {
  CHECK(lambda(1) == Rational(2));
  CHECK(lambda(2) == Rational(8, 3));
  CHECK(lambda(3) == Rational(44, 15));
  CHECK(lambda(4) == Rational(404, 135));
  CHECK(lambda_gap_ratio(1) == Rational(1, 3));
  CHECK(lambda_gap_ratio(2) == Rational(1, 5));
  CHECK(lambda_gap_ratio(5) <= Rational(1, 2));
  CHECK_THROWS_AS(lambda(0), DomainError);
  for (unsigned p = 1; p <= 40; ++p) {
    CHECK(lambda(p) < 3);
    CHECK(lambda(p) < lambda(p + 1));
    CHECK(lambda_gap_ratio(p) <= Rational(1, 2));
  }
}

TEST_CASE("Lambda") {
  CHECK(close(Lambda_dominant(2.0), 1.0, 1e-15));
  const Complex direct = Lambda_direct(2.0, 40);
  // sum (lambda_p - 3) 4^-p < 0
  CHECK(direct.real() < 1.0);
  CHECK(std::abs(direct.imag()) < 1e-15);
  CHECK(std::abs(Lambda_direct(2.0, 41) - direct) < std::pow(2.0, -40));
  CHECK_THROWS_AS(Lambda_dominant(0.0), DomainError);
  CHECK_THROWS_AS(Lambda_dominant(chi(1)), DomainError);
}

TEST_CASE("constant c") {
  CHECK(constant_c() == doctest::Approx(0.29243).epsilon(1e-5 / 0.29243));
  CHECK(constant_c() + 1.0 / std::numbers::ln2 + std::numbers::egamma / (2.0 * std::numbers::ln2) - 0.5 ==
        doctest::Approx(std::log2(kPi)).epsilon(1e-15));
  CHECK(constant_c_digits(30) == "0.292427999944921815360145854402");
  CHECK(std::abs(std::stod(constant_c_digits()) - constant_c()) < 1e-15);
}

TEST_CASE("fluctuation") {
  const auto spec = FluctuationSpec::build();
  REQUIRE(spec.coeffs.size() == kDefaultHarmonics);
  CHECK(close(spec.coeffs[0], Complex(-0.019831566639040987, -0.0045341705986689), 1e-12));
  CHECK(std::abs(spec.coeffs[1]) == doctest::Approx(4.45773e-5).epsilon(1e-5));
  for (std::size_t k = 1; k < spec.coeffs.size(); ++k) {
    CHECK(std::abs(spec.coeffs[k]) < std::abs(spec.coeffs[k - 1]));
  }
  double tail = 0.0;
  for (std::size_t k = 3; k < spec.coeffs.size(); ++k) tail += std::abs(spec.coeffs[k]);
  CHECK(tail < 1e-8 * std::abs(spec.coeffs[0]));
  CHECK_THROWS_AS(FluctuationSpec::build(0), DomainError);

  CHECK(psi(0.0, spec) == doctest::Approx(-0.039614362474954927).epsilon(1e-12));
  CHECK(psi(0.25, spec) == doctest::Approx(0.0090194189532112937).epsilon(1e-11));
  CHECK(psi(0.5, spec) == doctest::Approx(0.039711993771486039).epsilon(1e-12));
  CHECK(psi_amplitude(spec) == doctest::Approx(0.0406986213858).epsilon(1e-10));

  SUBCASE("period one") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
      const double v = x(rng);
      CHECK(std::abs(psi(v + 1.0, spec) - psi(v, spec)) <= 1e-12);
    }
  }
  SUBCASE("zero mean") {
    const std::size_t samples = 4096;
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) sum += psi(static_cast<double>(i) / samples, spec);
    CHECK(std::abs(sum / samples) <= 1e-10);
  }
  SUBCASE("extra harmonics are negligible") {
    const auto more = FluctuationSpec::build(8);
    for (double v : {0.0, 0.1, 0.37, 0.5, 0.81}) CHECK(std::abs(psi(v, more) - psi(v, spec)) < 1e-10);
  }
}

TEST_CASE("asymptotic average") {
  const auto spec = FluctuationSpec::build();
  CHECK(asymptotic_average(4096, spec) == doctest::Approx(6.0 + constant_c() + psi(6.0, spec)).epsilon(1e-15));
  CHECK(asymptotic_average(4 * 37, spec) - asymptotic_average(37, spec) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(asymptotic_average(1024, spec) - asymptotic_average(256, spec) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(smooth_average(16) == doctest::Approx(2.0 + constant_c()));
  CHECK_THROWS_AS(asymptotic_average(1, spec), DomainError);
}

TEST_CASE("compare") {
  const auto spec = FluctuationSpec::build();
  const std::vector<std::size_t> ns{3, 4, 256};
  const auto report = compare(ns, spec);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].exact == Rational(11, 9));
  CHECK(report.rows[1].exact == Rational(41, 28));
  CHECK(report.rows[0].classical == Rational(6, 5));
  for (const auto& row : report.rows) {
    CHECK(std::isfinite(row.residual));
    CHECK(row.residual == doctest::Approx(row.exact_value - row.smooth - row.psi));
  }
  CHECK(std::abs(report.rows[2].exact_value - report.rows[2].smooth) <= 0.05);
  CHECK(compare(std::vector<std::size_t>{}, spec).rows.empty());
}
