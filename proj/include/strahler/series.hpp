#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace strahler {

using Integer = mpz_class;
using Rational = mpq_class;

namespace series {

// The two formal variables: z marks tree size, u is the uniformizing
// variable with z = u/(1+u)^2.
enum class Var { Z, U };

std::string_view to_string(Var var);

// Truncated formal power series with exact rational coefficients.
//
// Coefficients of exponents 0..order() are meaningful. Storage may be shorter
// than order()+1; the missing coefficients are zero. Binary operations take
// the minimum of the operand orders and never extend a series.
class TruncSeries {
 public:
  TruncSeries(Var var, std::size_t order);
  TruncSeries(Var var, std::size_t order, std::vector<Rational> coeffs);

  static TruncSeries constant(Var var, std::size_t order, const Rational& c);
  static TruncSeries monomial(Var var, std::size_t order, std::size_t exponent,
                              const Rational& c = 1);
  static TruncSeries from_integers(Var var, std::size_t order,
                                   std::initializer_list<long> coeffs);
  static TruncSeries from_integers(Var var, std::size_t order,
                                   std::span<const Integer> coeffs);

  Var var() const noexcept { return var_; }
  std::size_t order() const noexcept { return order_; }

  // Coefficient of the given exponent; zero past the stored length.
  // Asking beyond order() is an error since that coefficient is unknown.
  const Rational& operator[](std::size_t exponent) const;
  std::span<const Rational> stored() const noexcept { return coeffs_; }

  // Index of the first nonzero coefficient, order()+1 for the zero series.
  std::size_t valuation() const noexcept;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_integral() const noexcept;
  // Coefficients 0..order() as integers; throws DomainError if any is not.
  std::vector<Integer> integer_coeffs() const;

  TruncSeries truncated(std::size_t order) const;
  TruncSeries derivative() const;
  TruncSeries with_coefficient(std::size_t exponent, const Rational& value) const;

  TruncSeries& operator+=(const TruncSeries& other);
  TruncSeries& operator-=(const TruncSeries& other);
  TruncSeries& operator*=(const Rational& scalar);

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator-(TruncSeries a) { return a *= Rational(-1); }
  friend TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
  friend TruncSeries operator*(const Rational& s, TruncSeries a) { return a *= s; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

  // Same variable, same order, same coefficients.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  std::string to_string() const;

 private:
  void trim();
  void require_same_var(const TruncSeries& other, std::string_view op) const;

  Var var_;
  std::size_t order_;
  std::vector<Rational> coeffs_;
};

// Cauchy product truncated to the smaller order.
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);

// Multiplicative inverse; the constant term must be nonzero.
TruncSeries recip(const TruncSeries& a);

// f(g(z)) for f in u and g in z with g(0) = 0.
TruncSeries compose(const TruncSeries& f, const TruncSeries& g);

// The compositional inverse u(z) of z = u/(1+u)^2, i.e. the solution of
// u = z(1+u)^2 with u(0) = 0, by fixed-point iteration.
TruncSeries solve_u(std::size_t order);

// [z^n] f(u(z)) from the u-derivative of f:
//   (1/n) * sum_j f'_j * binom(2n, n-1-j).
// fprime must be known to order n-1.
Rational lagrange_coeff(const TruncSeries& fprime, std::size_t n);

// n * [z^n] f(u(z)) for integral f'. fprime must hold at least n entries.
Integer lagrange_numerator(std::span<const Integer> fprime, std::size_t n);

// f(u(z)) to the given order for an integer u-series f with at least
// order + 1 coefficients, one Lagrange extraction per coefficient.
TruncSeries lagrange_series(std::span<const Integer> f, std::size_t order);

// Sparse integer polynomial in u. Terms are kept with strictly increasing
// exponents and nonzero coefficients.
class SparsePoly {
 public:
  using Exponent = std::uint64_t;
  using Term = std::pair<Exponent, Integer>;

  SparsePoly() = default;
  explicit SparsePoly(std::vector<Term> terms);  // any order; duplicates merged

  static SparsePoly constant(const Integer& c);
  static SparsePoly monomial(Exponent exponent, const Integer& c = 1);
  // 1 - u^d
  static SparsePoly one_minus(Exponent d);
  // (1 - u^d)/(1 - u) = 1 + u + ... + u^(d-1)
  static SparsePoly geometric(Exponent d);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Integer coefficient(Exponent exponent) const;
  // Exponent of the lowest term; throws DomainError for the zero polynomial.
  Exponent lowest_exponent() const;
  Exponent degree() const;

  // Exact division by u^k; DomainError if some term has exponent below k.
  SparsePoly divided_by_u(Exponent k) const;
  SparsePoly pow(unsigned e) const;

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;

 private:
  std::vector<Term> terms_;
};

// numer/denom, a rational function of u. Expansion needs a nonzero constant
// term in denom; closed forms with a 1/u prefactor are normalized
// beforehand with SparsePoly::divided_by_u.
struct URational {
  SparsePoly numer;
  SparsePoly denom;

  friend URational operator*(const URational& a, const URational& b) {
    return {a.numer * b.numer, a.denom * b.denom};
  }
};

// Power series in u of r, via the linear recurrence given by r.denom.
TruncSeries expand(const URational& r, std::size_t order);

// Caches the powers u(z)^k so that many series in u can be pushed to z
// cheaply. apply(f) equals compose(f, solve_u(order)) truncated to order.
class USubstitution {
 public:
  explicit USubstitution(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  const TruncSeries& u() const noexcept { return u_; }
  TruncSeries apply(const TruncSeries& f) const;

 private:
  std::size_t order_;
  TruncSeries u_;
  std::vector<std::vector<Integer>> powers_;  // powers_[k][n] = [z^n] u^k
};

}  // namespace series
}  // namespace strahler
