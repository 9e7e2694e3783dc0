#include "strahler/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "strahler/errors.hpp"

namespace strahler::series {

namespace {

const Rational kZero{0};

bool all_integral(std::span<const Rational> coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

std::vector<Integer> numerators(std::span<const Rational> coeffs) {
  std::vector<Integer> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.get_num());
  return out;
}

std::vector<Rational> to_rationals(std::vector<Integer>&& ints) {
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(std::move(v));
  return out;
}

// Truncated product of integer coefficient vectors, keeping exponents <= order.
std::vector<Integer> mul_integers(std::span<const Integer> a, std::span<const Integer> b,
                                  std::size_t order) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = std::min(a.size() + b.size() - 1, order + 1);
  std::vector<Integer> c(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return c;
}

std::vector<Rational> mul_rationals(std::span<const Rational> a, std::span<const Rational> b,
                                    std::size_t order) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = std::min(a.size() + b.size() - 1, order + 1);
  std::vector<Rational> c(len);
  Rational tmp;
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      tmp = a[i] * b[j];
      c[i + j] += tmp;
    }
  }
  return c;
}

}  // namespace

std::string_view to_string(Var var) { return var == Var::Z ? "z" : "u"; }

TruncSeries::TruncSeries(Var var, std::size_t order) : var_(var), order_(order) {}

TruncSeries::TruncSeries(Var var, std::size_t order, std::vector<Rational> coeffs)
    : var_(var), order_(order), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() > order_ + 1) {
    throw DomainError("TruncSeries: " + std::to_string(coeffs_.size()) +
                      " coefficients exceed order " + std::to_string(order_));
  }
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

TruncSeries TruncSeries::constant(Var var, std::size_t order, const Rational& c) {
  return TruncSeries(var, order, {c});
}

TruncSeries TruncSeries::monomial(Var var, std::size_t order, std::size_t exponent,
                                  const Rational& c) {
  if (exponent > order) return TruncSeries(var, order);
  std::vector<Rational> coeffs(exponent + 1);
  coeffs[exponent] = c;
  return TruncSeries(var, order, std::move(coeffs));
}

TruncSeries TruncSeries::from_integers(Var var, std::size_t order,
                                       std::initializer_list<long> coeffs) {
  std::vector<Rational> out;
  for (long c : coeffs) {
    if (out.size() == order + 1) break;
    out.emplace_back(c);
  }
  return TruncSeries(var, order, std::move(out));
}

TruncSeries TruncSeries::from_integers(Var var, std::size_t order,
                                       std::span<const Integer> coeffs) {
  std::vector<Rational> out;
  const std::size_t len = std::min(coeffs.size(), order + 1);
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.emplace_back(coeffs[i]);
  return TruncSeries(var, order, std::move(out));
}

const Rational& TruncSeries::operator[](std::size_t exponent) const {
  if (exponent > order_) {
    throw DomainError("coefficient of " + std::string(series::to_string(var_)) + "^" +
                      std::to_string(exponent) + " is beyond truncation order " +
                      std::to_string(order_));
  }
  return exponent < coeffs_.size() ? coeffs_[exponent] : kZero;
}

std::size_t TruncSeries::valuation() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return i;
  }
  return order_ + 1;
}

bool TruncSeries::is_integral() const noexcept { return all_integral(coeffs_); }

std::vector<Integer> TruncSeries::integer_coeffs() const {
  if (!is_integral()) throw DomainError("series has non-integral coefficients");
  auto out = numerators(coeffs_);
  out.resize(order_ + 1);
  return out;
}

TruncSeries TruncSeries::truncated(std::size_t order) const {
  if (order > order_) {
    throw DomainError("cannot truncate a series of order " + std::to_string(order_) +
                      " to the larger order " + std::to_string(order));
  }
  std::vector<Rational> coeffs(coeffs_.begin(),
                               coeffs_.begin() + std::min(coeffs_.size(), order + 1));
  return TruncSeries(var_, order, std::move(coeffs));
}

TruncSeries TruncSeries::derivative() const {
  const std::size_t order = order_ == 0 ? 0 : order_ - 1;
  std::vector<Rational> coeffs;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) coeffs.push_back(coeffs_[k] * k);
  return TruncSeries(var_, order, std::move(coeffs));
}

TruncSeries TruncSeries::with_coefficient(std::size_t exponent, const Rational& value) const {
  if (exponent > order_) throw DomainError("with_coefficient: exponent beyond order");
  auto coeffs = coeffs_;
  if (coeffs.size() <= exponent) coeffs.resize(exponent + 1);
  coeffs[exponent] = value;
  return TruncSeries(var_, order_, std::move(coeffs));
}

void TruncSeries::require_same_var(const TruncSeries& other, std::string_view op) const {
  if (var_ != other.var_) {
    throw DomainError(std::string(op) + ": variable mismatch (" + std::string(series::to_string(var_)) +
                      " vs " + std::string(series::to_string(other.var_)) + ")");
  }
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
  require_same_var(other, "add");
  order_ = std::min(order_, other.order_);
  if (coeffs_.size() > order_ + 1) coeffs_.resize(order_ + 1);
  const std::size_t len = std::min(other.coeffs_.size(), order_ + 1);
  if (coeffs_.size() < len) coeffs_.resize(len);
  for (std::size_t i = 0; i < len; ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
  require_same_var(other, "sub");
  order_ = std::min(order_, other.order_);
  if (coeffs_.size() > order_ + 1) coeffs_.resize(order_ + 1);
  const std::size_t len = std::min(other.coeffs_.size(), order_ + 1);
  if (coeffs_.size() < len) coeffs_.resize(len);
  for (std::size_t i = 0; i < len; ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.var_ == b.var_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

std::string TruncSeries::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i].get_str();
  }
  os << "] + O(" << series::to_string(var_) << "^" << order_ + 1 << ")";
  return os.str();
}

void TruncSeries::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  if (a.var() != b.var()) throw DomainError("mul: variable mismatch");
  const std::size_t order = std::min(a.order(), b.order());
  if (a.is_integral() && b.is_integral()) {
    auto c = mul_integers(numerators(a.stored()), numerators(b.stored()), order);
    return TruncSeries(a.var(), order, to_rationals(std::move(c)));
  }
  return TruncSeries(a.var(), order, mul_rationals(a.stored(), b.stored(), order));
}

TruncSeries recip(const TruncSeries& a) {
  if (sgn(a[0]) == 0) throw DomainError("recip: constant term is zero");
  const std::size_t order = a.order();
  const auto coeffs = a.stored();
  const Rational inv0 = 1 / a[0];
  std::vector<Rational> b(order + 1);
  b[0] = inv0;
  Rational acc, tmp;
  for (std::size_t n = 1; n <= order; ++n) {
    acc = 0;
    const std::size_t kmax = std::min(n, coeffs.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (sgn(coeffs[k]) == 0) continue;
      tmp = coeffs[k] * b[n - k];
      acc += tmp;
    }
    b[n] = -acc * inv0;
  }
  return TruncSeries(a.var(), order, std::move(b));
}

TruncSeries compose(const TruncSeries& f, const TruncSeries& g) {
  if (f.var() != Var::U || g.var() != Var::Z) {
    throw DomainError("compose: expected f in u and g in z");
  }
  if (sgn(g[0]) != 0) throw DomainError("compose: inner series has nonzero constant term");
  if (g.is_zero()) return TruncSeries::constant(Var::Z, g.order(), f[0]);

  // g^k has valuation k*v, so f is needed up to exponent order/v and the
  // result is only determined up to (f.order()+1)*v - 1.
  const std::size_t v = g.valuation();
  const std::size_t order = std::min(g.order(), (f.order() + 1) * v - 1);
  const std::size_t kmax = std::min(f.order(), order / v);

  TruncSeries result = TruncSeries::constant(Var::Z, order, f[0]);
  TruncSeries power = TruncSeries::constant(Var::Z, order, 1);
  const TruncSeries inner = g.truncated(order);
  for (std::size_t k = 1; k <= kmax; ++k) {
    power = mul(power, inner);
    if (sgn(f[k]) != 0) result += power * f[k];
  }
  return result;
}

TruncSeries solve_u(std::size_t order) {
  // After iteration k of u <- z(1+u)^2 the coefficients up to z^k are final,
  // so iteration k only needs to be carried to order k.
  std::vector<Integer> u(order + 1);
  for (std::size_t it = 1; it <= order; ++it) {
    std::vector<Integer> one_plus(u.begin(), u.begin() + it);
    one_plus[0] += 1;
    const auto square = mul_integers(one_plus, one_plus, it - 1);
    std::vector<Integer> next(order + 1);
    for (std::size_t n = 1; n <= it; ++n) next[n] = square[n - 1];
    u = std::move(next);
  }
  return TruncSeries(Var::Z, order, to_rationals(std::move(u)));
}

Rational lagrange_coeff(const TruncSeries& fprime, std::size_t n) {
  if (fprime.var() != Var::U) throw DomainError("lagrange_coeff: expected a series in u");
  if (n == 0) throw DomainError("lagrange_coeff: n must be at least 1");
  if (fprime.order() + 1 < n) {
    throw DomainError("lagrange_coeff: derivative known to order " +
                      std::to_string(fprime.order()) + ", need " + std::to_string(n - 1));
  }
  if (fprime.is_integral()) {
    const auto ints = fprime.integer_coeffs();
    Rational out(lagrange_numerator(ints, n), Integer(n));
    out.canonicalize();
    return out;
  }
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n - 1);
  Rational acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = n - 1 - j;
    if (sgn(fprime[j]) != 0) acc += fprime[j] * binom;
    if (k > 0) {
      binom *= static_cast<unsigned long>(k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), 2 * n - k + 1);
    }
  }
  acc /= Integer(n);
  acc.canonicalize();
  return acc;
}

Integer lagrange_numerator(std::span<const Integer> fprime, std::size_t n) {
  if (n == 0) throw DomainError("lagrange_numerator: n must be at least 1");
  if (fprime.size() < n) throw DomainError("lagrange_numerator: derivative too short");
  // binom(2n, k) for k = n-1 down to 0, updated by exact division.
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n - 1);
  Integer acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = n - 1 - j;
    if (sgn(fprime[j]) != 0) mpz_addmul(acc.get_mpz_t(), fprime[j].get_mpz_t(), binom.get_mpz_t());
    if (k > 0) {
      mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(), k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), 2 * n - k + 1);
    }
  }
  return acc;
}

TruncSeries lagrange_series(std::span<const Integer> f, std::size_t order) {
  if (f.size() < order + 1) throw DomainError("lagrange_series: u-series too short");
  std::vector<Integer> fprime(order);
  for (std::size_t j = 0; j < order; ++j) fprime[j] = f[j + 1] * static_cast<unsigned long>(j + 1);
  std::vector<Rational> c(order + 1);
  c[0] = f[0];
  for (std::size_t n = 1; n <= order; ++n) {
    Integer numer = lagrange_numerator(fprime, n);
    // u(z) has integer coefficients, so the division is exact.
    mpz_divexact_ui(numer.get_mpz_t(), numer.get_mpz_t(), n);
    c[n] = numer;
  }
  return TruncSeries(Var::Z, order, std::move(c));
}

SparsePoly::SparsePoly(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& [e, c] : terms) {
    if (!terms_.empty() && terms_.back().first == e) {
      terms_.back().second += c;
    } else {
      terms_.emplace_back(e, std::move(c));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return sgn(t.second) == 0; });
}

SparsePoly SparsePoly::constant(const Integer& c) { return SparsePoly({{0, c}}); }

SparsePoly SparsePoly::monomial(Exponent exponent, const Integer& c) {
  return SparsePoly({{exponent, c}});
}

SparsePoly SparsePoly::one_minus(Exponent d) { return SparsePoly({{0, 1}, {d, -1}}); }

SparsePoly SparsePoly::geometric(Exponent d) {
  std::vector<Term> terms;
  terms.reserve(d);
  for (Exponent e = 0; e < d; ++e) terms.emplace_back(e, 1);
  return SparsePoly(std::move(terms));
}

Integer SparsePoly::coefficient(Exponent exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, Exponent e) { return t.first < e; });
  return (it != terms_.end() && it->first == exponent) ? it->second : Integer(0);
}

SparsePoly::Exponent SparsePoly::lowest_exponent() const {
  if (terms_.empty()) throw DomainError("lowest exponent of the zero polynomial");
  return terms_.front().first;
}

SparsePoly::Exponent SparsePoly::degree() const {
  if (terms_.empty()) throw DomainError("degree of the zero polynomial");
  return terms_.back().first;
}

SparsePoly SparsePoly::divided_by_u(Exponent k) const {
  if (!terms_.empty() && terms_.front().first < k) {
    throw DomainError("polynomial is not divisible by u^" + std::to_string(k) +
                      ": expansion would require negative powers of u");
  }
  SparsePoly out = *this;
  for (auto& t : out.terms_) t.first -= k;
  return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly out = constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  auto terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return SparsePoly(std::move(terms));
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
  auto terms = a.terms_;
  for (const auto& [e, c] : b.terms_) terms.emplace_back(e, -c);
  return SparsePoly(std::move(terms));
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  std::map<SparsePoly::Exponent, Integer> acc;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      auto& slot = acc[ea + eb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  std::vector<SparsePoly::Term> terms(acc.begin(), acc.end());
  return SparsePoly(std::move(terms));
}

TruncSeries expand(const URational& r, std::size_t order) {
  if (r.denom.is_zero() || sgn(r.denom.coefficient(0)) == 0) {
    throw DomainError(
        "expand: denominator has zero constant term; expansion would require negative powers of u");
  }
  const Integer d0 = r.denom.coefficient(0);
  std::vector<SparsePoly::Term> tail;
  for (const auto& t : r.denom.terms()) {
    if (t.first > 0 && t.first <= order) tail.push_back(t);
  }

  if (d0 == 1 || d0 == -1) {
    std::vector<Integer> c(order + 1);
    for (const auto& [e, v] : r.numer.terms()) {
      if (e <= order) c[e] = v;
    }
    for (std::size_t n = 0; n <= order; ++n) {
      for (const auto& [e, d] : tail) {
        if (e > n) break;
        mpz_submul(c[n].get_mpz_t(), d.get_mpz_t(), c[n - e].get_mpz_t());
      }
      if (d0 == -1) c[n] = -c[n];
    }
    return TruncSeries(Var::U, order, to_rationals(std::move(c)));
  }

  std::vector<Rational> c(order + 1);
  for (const auto& [e, v] : r.numer.terms()) {
    if (e <= order) c[e] = v;
  }
  for (std::size_t n = 0; n <= order; ++n) {
    for (const auto& [e, d] : tail) {
      if (e > n) break;
      c[n] -= Rational(d) * c[n - e];
    }
    c[n] /= d0;
  }
  return TruncSeries(Var::U, order, std::move(c));
}

USubstitution::USubstitution(std::size_t order)
    : order_(order), u_(solve_u(order)) {
  const auto u = u_.integer_coeffs();
  powers_.reserve(order + 1);
  powers_.push_back({Integer(1)});
  for (std::size_t k = 1; k <= order; ++k) {
    powers_.push_back(mul_integers(powers_.back(), u, order));
  }
}

TruncSeries USubstitution::apply(const TruncSeries& f) const {
  if (f.var() != Var::U) throw DomainError("USubstitution: expected a series in u");
  const std::size_t order = std::min(order_, f.order());
  const auto coeffs = f.stored();
  const std::size_t kmax = std::min(coeffs.size(), order + 1);
  if (f.is_integral()) {
    std::vector<Integer> out(order + 1);
    for (std::size_t k = 0; k < kmax; ++k) {
      if (sgn(coeffs[k]) == 0) continue;
      const auto& num = coeffs[k].get_num();
      const auto& pk = powers_[k];
      for (std::size_t n = k; n < pk.size() && n <= order; ++n) {
        mpz_addmul(out[n].get_mpz_t(), num.get_mpz_t(), pk[n].get_mpz_t());
      }
    }
    return TruncSeries(Var::Z, order, to_rationals(std::move(out)));
  }
  std::vector<Rational> out(order + 1);
  for (std::size_t k = 0; k < kmax; ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    const auto& pk = powers_[k];
    for (std::size_t n = k; n < pk.size() && n <= order; ++n) out[n] += coeffs[k] * pk[n];
  }
  return TruncSeries(Var::Z, order, std::move(out));
}

}  // namespace strahler::series
