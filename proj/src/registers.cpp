#include "strahler/registers.hpp"

#include <bit>

#include "strahler/errors.hpp"

namespace strahler::registers {

using series::SparsePoly;
using series::USubstitution;
using series::Var;

namespace {

using Coeffs = std::vector<Integer>;

TruncSeries z_monomial(std::size_t order) { return TruncSeries::monomial(Var::Z, order, 1); }

TruncSeries one(std::size_t order) { return TruncSeries::constant(Var::Z, order, 1); }

// Solves X (1 - m) = rhs.
TruncSeries solve_linear(const TruncSeries& rhs, const TruncSeries& m) {
  return rhs * series::recip(one(m.order()) - m);
}

std::uint64_t pow2(unsigned p) {
  if (p >= 63) throw DomainError("2^p overflows the exponent range");
  return std::uint64_t{1} << p;
}

// In-place operations on a truncated integer u-series.
void mul_one_minus(Coeffs& v, std::size_t d) {  // *= (1 - u^d)
  for (std::size_t n = v.size(); n-- > d;) v[n] -= v[n - d];
}

void div_one_minus(Coeffs& v, std::size_t d) {  // /= (1 - u^d)
  for (std::size_t n = d; n < v.size(); ++n) v[n] += v[n - d];
}

void mul_one_plus_u(Coeffs& v) {  // *= (1 + u)
  for (std::size_t n = v.size(); n-- > 1;) v[n] += v[n - 1];
}

void shift_up(Coeffs& v, std::size_t k) {  // *= u^k
  if (k == 0) return;
  for (std::size_t n = v.size(); n-- > 0;) v[n] = n >= k ? v[n - k] : Integer(0);
}

void add_into(Coeffs& acc, const Coeffs& v) {
  for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += v[n];
}

// (1-u^2)/u * u^(2^p) * bracket / (1 - u^denom_exp), i.e. the S_p-like
// prefactor applied to an arbitrary series.
void apply_register_prefactor(Coeffs& v, unsigned p, std::uint64_t denom_exp) {
  const std::uint64_t shift = pow2(p) - 1;
  if (shift >= v.size()) {
    std::fill(v.begin(), v.end(), Integer(0));
    return;
  }
  shift_up(v, shift);
  mul_one_minus(v, 2);
  div_one_minus(v, denom_exp);
}

Coeffs unit_series(std::size_t order) {
  Coeffs v(order + 1);
  v[0] = 1;
  return v;
}

Integer coefficient_sum(const std::vector<TruncSeries>& family, unsigned from, std::size_t n) {
  Integer total = 0;
  for (std::size_t p = from; p < family.size(); ++p) total += family[p][n].get_num();
  return total;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::B: return "B";
    case Kind::A: return "A";
    case Kind::R: return "R";
    case Kind::S: return "S";
    case Kind::T: return "T";
    case Kind::SumS: return "SumS";
    case Kind::SumT: return "SumT";
  }
  return "?";
}

unsigned max_reg(std::size_t n) { return static_cast<unsigned>(std::bit_width(n + 1)) - 1; }

GFFamily catalan_B(std::size_t order) {
  // B = 1 + z B^2, coefficient by coefficient.
  Coeffs b(order + 1);
  b[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    for (std::size_t i = 0; i < n; ++i) {
      mpz_addmul(b[n].get_mpz_t(), b[i].get_mpz_t(), b[n - 1 - i].get_mpz_t());
    }
  }
  return {Kind::B, 0, TruncSeries::from_integers(Var::Z, order, b)};
}

GFFamily butterfly_A(std::size_t order) {
  const auto b = catalan_B(order).series;
  return {Kind::A, 0, (b - one(order)) * b};
}

Integer butterfly_count(std::size_t n) {
  if (n == 0) throw DomainError("butterfly_count: n must be at least 1");
  Integer num, a, b;
  mpz_fac_ui(num.get_mpz_t(), 2 * n);
  mpz_fac_ui(a.get_mpz_t(), n - 1);
  mpz_fac_ui(b.get_mpz_t(), n + 2);
  num *= 3;
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), b.get_mpz_t());
  return num;
}

Integer catalan(std::size_t n) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
  mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), n + 1);
  return c;
}

std::vector<TruncSeries> R_rec_all(unsigned p_max, std::size_t order) {
  const auto z = z_monomial(order);
  std::vector<TruncSeries> r{one(order)};
  TruncSeries below = one(order);  // sum_{j<p} R_j
  for (unsigned p = 1; p <= p_max; ++p) {
    const auto& prev = r.back();
    r.push_back(solve_linear(z * prev * prev, z * below * Rational(2)));
    below += r.back();
  }
  return r;
}

std::vector<TruncSeries> S_rec_all(unsigned p_max, std::size_t order) {
  const auto z = z_monomial(order);
  const auto b = catalan_B(order).series;
  std::vector<TruncSeries> s{b};
  for (unsigned p = 1; p <= p_max; ++p) {
    const auto& prev = s.back();
    s.push_back(solve_linear(z * prev * prev, z * (b - prev) * Rational(2)));
  }
  return s;
}

std::vector<TruncSeries> T_rec_all(unsigned p_max, std::size_t order) {
  const auto z = z_monomial(order);
  const auto b = catalan_B(order).series;
  const auto a = butterfly_A(order).series;
  const auto s = S_rec_all(p_max, order);
  std::vector<TruncSeries> t{a};
  if (p_max >= 1) t.push_back(a);
  for (unsigned p = 2; p <= p_max; ++p) {
    const auto& prev = t.back();
    const auto rhs = s[p] + z * s[p - 1] * prev + z * s[p] * (a - prev);
    t.push_back(solve_linear(rhs, z * (b - s[p - 1])));
  }
  return t;
}

GFFamily R_rec(unsigned p, std::size_t order) {
  return {Kind::R, p, std::move(R_rec_all(p, order).back())};
}

GFFamily S_rec(unsigned p, std::size_t order) {
  return {Kind::S, p, std::move(S_rec_all(p, order).back())};
}

GFFamily T_rec(unsigned p, std::size_t order) {
  return {Kind::T, p, std::move(T_rec_all(p, order).back())};
}

URational R_closed_u(unsigned p) {
  const auto numer = (SparsePoly::one_minus(2) * SparsePoly::monomial(pow2(p))).divided_by_u(1);
  return {numer, SparsePoly::one_minus(pow2(p + 1))};
}

URational S_closed_u(unsigned p) {
  const auto numer = (SparsePoly::one_minus(2) * SparsePoly::monomial(pow2(p))).divided_by_u(1);
  return {numer, SparsePoly::one_minus(pow2(p))};
}

URational T_closed_u(unsigned p) {
  const auto one_plus_u = SparsePoly({{0, 1}, {1, 1}});
  SparsePoly partial_product = SparsePoly::constant(1);  // prod_{j<h} (1-u^(2^j+1))/(1-u)
  SparsePoly sum;
  for (unsigned h = 1; h < p; ++h) {
    partial_product = partial_product * SparsePoly::geometric(pow2(h - 1) + 1);
    sum = sum + SparsePoly::geometric(pow2(h)) * partial_product;
  }
  const auto bracket = one_plus_u.pow(2) + SparsePoly::geometric(3) * sum;

  SparsePoly denom_product = SparsePoly::constant(1);
  for (unsigned j = 0; j < p; ++j) denom_product = denom_product * SparsePoly::one_minus(pow2(j) + 1);

  const auto s = S_closed_u(p);
  return {s.numer * bracket * SparsePoly::one_minus(1).pow(p), s.denom * denom_product};
}

GFFamily R_closed(unsigned p, const USubstitution& subst) {
  return {Kind::R, p, subst.apply(series::expand(R_closed_u(p), subst.order()))};
}

GFFamily S_closed(unsigned p, const USubstitution& subst) {
  return {Kind::S, p, subst.apply(series::expand(S_closed_u(p), subst.order()))};
}

GFFamily T_closed(unsigned p, const USubstitution& subst) {
  if (p == 0) return {Kind::T, 0, butterfly_A(subst.order()).series};
  return {Kind::T, p, subst.apply(series::expand(T_closed_u(p), subst.order()))};
}

GFFamily R_closed(unsigned p, std::size_t order) {
  return {Kind::R, p, series::lagrange_series(R_closed_u_series(p, order), order)};
}

GFFamily S_closed(unsigned p, std::size_t order) {
  return {Kind::S, p, series::lagrange_series(S_closed_u_series(p, order), order)};
}

GFFamily T_closed(unsigned p, std::size_t order) {
  if (p == 0) return {Kind::T, 0, butterfly_A(order).series};
  return {Kind::T, p, series::lagrange_series(T_closed_u_series(p, order), order)};
}

std::vector<Integer> R_closed_u_series(unsigned p, std::size_t order) {
  auto v = unit_series(order);
  apply_register_prefactor(v, p, pow2(p + 1));
  return v;
}

std::vector<Integer> S_closed_u_series(unsigned p, std::size_t order) {
  auto v = unit_series(order);
  apply_register_prefactor(v, p, pow2(p));
  return v;
}

std::vector<Integer> T_closed_u_series(unsigned p, std::size_t order) {
  if (p == 0) throw DomainError("T_closed_u_series: the closed form needs p >= 1");
  Coeffs partial = unit_series(order);
  Coeffs sum(order + 1);
  for (unsigned h = 1; h < p; ++h) {
    mul_one_minus(partial, pow2(h - 1) + 1);
    div_one_minus(partial, 1);
    Coeffs term = partial;
    mul_one_minus(term, pow2(h));
    div_one_minus(term, 1);
    add_into(sum, term);
  }
  mul_one_minus(sum, 3);
  div_one_minus(sum, 1);
  Coeffs bracket = unit_series(order);
  mul_one_plus_u(bracket);
  mul_one_plus_u(bracket);
  add_into(bracket, sum);

  apply_register_prefactor(bracket, p, pow2(p));
  for (unsigned j = 0; j < p; ++j) {
    mul_one_minus(bracket, 1);
    div_one_minus(bracket, pow2(j) + 1);
  }
  return bracket;
}

std::map<unsigned, Integer> distribution(std::size_t n) {
  if (n == 0) throw DomainError("distribution: n must be at least 1");
  const unsigned top = max_reg(n);
  std::vector<Integer> at_least(top + 2);  // [z^n] T_p
  for (unsigned p = 1; p <= top; ++p) {
    const auto t = T_closed_u_series(p, n);
    std::vector<Integer> derivative(n);
    for (std::size_t j = 0; j < n; ++j) derivative[j] = t[j + 1] * static_cast<unsigned long>(j + 1);
    at_least[p] = series::lagrange_numerator(derivative, n);
    mpz_divexact_ui(at_least[p].get_mpz_t(), at_least[p].get_mpz_t(), n);
  }
  std::map<unsigned, Integer> out;
  for (unsigned p = 1; p <= top; ++p) out[p] = at_least[p] - at_least[p + 1];
  return out;
}

std::map<unsigned, Integer> binary_distribution(std::size_t n) {
  if (n == 0) return {{0u, Integer(1)}};
  std::map<unsigned, Integer> out;
  for (unsigned p = 1; p <= max_reg(n); ++p) {
    const auto r = R_closed_u_series(p, n);
    std::vector<Integer> derivative(n);
    for (std::size_t j = 0; j < n; ++j) derivative[j] = r[j + 1] * static_cast<unsigned long>(j + 1);
    auto count = series::lagrange_numerator(derivative, n);
    mpz_divexact_ui(count.get_mpz_t(), count.get_mpz_t(), n);
    out[p] = std::move(count);
  }
  return out;
}

std::vector<std::map<unsigned, Integer>> distributions(std::size_t n_max, Family family) {
  const bool butterfly = family == Family::Butterfly;
  std::vector<std::map<unsigned, Integer>> out(n_max + 1);
  if (!butterfly) out[0][0] = 1;
  if (n_max == 0) return out;
  const unsigned top = max_reg(n_max);
  std::vector<TruncSeries> gf;  // T_p or R_p for p = 1..top
  for (unsigned p = 1; p <= top; ++p) {
    gf.push_back(series::lagrange_series(butterfly ? T_closed_u_series(p, n_max)
                                                   : R_closed_u_series(p, n_max),
                                         n_max));
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    const unsigned top_n = max_reg(n);
    for (unsigned p = 1; p <= top_n; ++p) {
      Rational count = gf[p - 1][n];
      if (butterfly && p < top_n) count -= gf[p][n];
      out[n][p] = count.get_num();
    }
  }
  return out;
}

std::vector<Rational> exact_averages(std::size_t n_max, Family family) {
  std::vector<Rational> out;
  if (n_max == 0) return out;
  const unsigned top = max_reg(n_max);
  const bool butterfly = family == Family::Butterfly;
  const auto gf = butterfly ? T_rec_all(top, n_max) : S_rec_all(top, n_max);
  const auto population = butterfly ? butterfly_A(n_max).series : catalan_B(n_max).series;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.emplace_back(coefficient_sum(gf, 1, n), population[n].get_num());
    out.back().canonicalize();
  }
  return out;
}

Rational exact_average(std::size_t n, Family family) {
  if (n == 0) throw DomainError("exact_average: n must be at least 1");
  return exact_averages(n, family).back();
}

AverageTable::AverageTable(Family family, std::size_t n_max)
    : family_(family), n_max_(n_max), derivative_(n_max) {
  Coeffs sum(n_max + 1);
  for (unsigned p = 1; p <= max_reg(n_max); ++p) {
    add_into(sum, family == Family::Butterfly ? T_closed_u_series(p, n_max)
                                              : S_closed_u_series(p, n_max));
  }
  for (std::size_t j = 0; j < n_max; ++j) {
    derivative_[j] = sum[j + 1] * static_cast<unsigned long>(j + 1);
  }
}

void AverageTable::check(std::size_t n) const {
  if (n == 0 || n > n_max_) {
    throw DomainError("AverageTable: n = " + std::to_string(n) + " outside 1.." +
                      std::to_string(n_max_));
  }
}

Integer AverageTable::total(std::size_t n) const {
  check(n);
  auto t = series::lagrange_numerator(std::span(derivative_).first(n), n);
  mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), n);
  return t;
}

Integer AverageTable::population(std::size_t n) const {
  check(n);
  return family_ == Family::Butterfly ? butterfly_count(n) : catalan(n);
}

Rational AverageTable::average(std::size_t n) const {
  Rational avg(total(n), population(n));
  avg.canonicalize();
  return avg;
}

Rational fast_average(std::size_t n, Family family) {
  return AverageTable(family, n).average(n);
}

}  // namespace strahler::registers
