#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "strahler/series.hpp"

// Generating functions for the register function of binary trees (R_p, S_p)
// and of butterfly trees (T_p), by recursion in z and by closed form in u.
namespace strahler::registers {

using series::TruncSeries;
using series::URational;

// B: binary trees. A: butterfly trees. R(p): reg = p. S(p): reg >= p.
// T(p): butterfly trees with reg >= p. SumS/SumT: sums over p >= 1.
enum class Kind { B, A, R, S, T, SumS, SumT };

std::string to_string(Kind kind);

struct GFFamily {
  Kind kind;
  unsigned p = 0;  // meaningful for R, S, T
  TruncSeries series;
};

enum class Family { Butterfly, Classical };

// Largest p with 2^p - 1 <= n, i.e. floor(log2(n + 1)).
unsigned max_reg(std::size_t n);

GFFamily catalan_B(std::size_t order);
GFFamily butterfly_A(std::size_t order);

// 3(2n)!/((n-1)!(n+2)!), the number of butterfly trees of size n >= 1.
Integer butterfly_count(std::size_t n);
Integer catalan(std::size_t n);

// R_0..R_{p_max} solved from R_p (1 - 2z sum_{j<p} R_j) = z R_{p-1}^2, R_0 = 1.
std::vector<TruncSeries> R_rec_all(unsigned p_max, std::size_t order);
// S_0..S_{p_max} from S_p (1 - 2z(B - S_{p-1})) = z S_{p-1}^2, S_0 = B.
std::vector<TruncSeries> S_rec_all(unsigned p_max, std::size_t order);
// T_0..T_{p_max}: T_0 = T_1 = A, and for p >= 2
//   T_p (1 - z(B - S_{p-1})) = S_p + z S_{p-1} T_{p-1} + z S_p (A - T_{p-1}).
std::vector<TruncSeries> T_rec_all(unsigned p_max, std::size_t order);

GFFamily R_rec(unsigned p, std::size_t order);
GFFamily S_rec(unsigned p, std::size_t order);
GFFamily T_rec(unsigned p, std::size_t order);

// Closed forms in u.
//   R_p = (1-u^2)/u * u^(2^p) / (1 - u^(2^(p+1)))
//   S_p = (1-u^2)/u * u^(2^p) / (1 - u^(2^p))
URational R_closed_u(unsigned p);
URational S_closed_u(unsigned p);
// S_p * [(1+u)^2 + (1+u+u^2) sum_{h=1}^{p-1} (1-u^(2^h))/(1-u)
//          * prod_{j<h} (1-u^(2^j+1))/(1-u)] * prod_{j<p} (1-u)/(1-u^(2^j+1)).
// This is T_p for p >= 1. At p = 0 the expression is (1+u)^3, not A.
URational T_closed_u(unsigned p);

// Closed forms pushed to z. The order overloads extract each coefficient by
// Lagrange inversion; the USubstitution overloads compose with u(z) directly.
GFFamily R_closed(unsigned p, std::size_t order);
GFFamily S_closed(unsigned p, std::size_t order);
// T_0 is A by definition; p >= 1 uses T_closed_u.
GFFamily T_closed(unsigned p, std::size_t order);
GFFamily R_closed(unsigned p, const series::USubstitution& subst);
GFFamily S_closed(unsigned p, const series::USubstitution& subst);
GFFamily T_closed(unsigned p, const series::USubstitution& subst);

// The same closed forms as integer u-series, built factor by factor in
// O(order * p) operations. Used by the fast extraction paths.
std::vector<Integer> R_closed_u_series(unsigned p, std::size_t order);
std::vector<Integer> S_closed_u_series(unsigned p, std::size_t order);
std::vector<Integer> T_closed_u_series(unsigned p, std::size_t order);

// count[p] = [z^n](T_p - T_{p+1}): butterfly trees of size n with reg = p.
std::map<unsigned, Integer> distribution(std::size_t n);
// count[p] = [z^n] R_p: binary trees of size n with reg = p.
std::map<unsigned, Integer> binary_distribution(std::size_t n);
// Row n holds distribution(n) (Butterfly) or binary_distribution(n)
// (Classical) for n = 0..n_max, sharing one u-series per p. Butterfly row 0 is empty.
std::vector<std::map<unsigned, Integer>> distributions(std::size_t n_max, Family family);

// Mean register function over all objects of size n >= 1, from the
// z-domain recursions: sum_p [z^n]T_p / [z^n]A, or sum_p [z^n]S_p / C_n.
Rational exact_average(std::size_t n, Family family);
// exact_average for n = 1..n_max; element i holds n = i + 1.
std::vector<Rational> exact_averages(std::size_t n_max, Family family);

// Average register function for 1 <= n <= n_max via Lagrange inversion
// on sum_p T_p (or sum_p S_p) as a series in u. Exact.
class AverageTable {
 public:
  AverageTable(Family family, std::size_t n_max);

  Family family() const noexcept { return family_; }
  std::size_t n_max() const noexcept { return n_max_; }

  // sum over objects of size n of their register function.
  Integer total(std::size_t n) const;
  // Number of objects of size n.
  Integer population(std::size_t n) const;
  Rational average(std::size_t n) const;

 private:
  void check(std::size_t n) const;

  Family family_;
  std::size_t n_max_;
  std::vector<Integer> derivative_;  // coefficients of (sum_p X_p)'(u)
};

Rational fast_average(std::size_t n, Family family = Family::Butterfly);

}  // namespace strahler::registers
