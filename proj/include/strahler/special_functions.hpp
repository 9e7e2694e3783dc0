#pragma once

#include <complex>

namespace strahler::special {

using Complex = std::complex<double>;

// Complex gamma function. Lanczos approximation (g = 607/128, 15 terms) on
// Re s >= 1/2, reflection below. DomainError at the poles 0, -1, -2, ...
Complex cgamma(Complex s);
// Principal-branch log gamma on Re s >= 1/2.
Complex clgamma(Complex s);

struct ZetaOptions {
  // Direct terms. The effective cutoff is max(terms, ceil(|Im s|)) so that
  // the Bernoulli tail stays small for arguments far up the critical strip.
  int terms = 30;
  int bernoulli_terms = 12;  // at most 12
};

// Riemann zeta by Euler-Maclaurin summation. DomainError at s = 1.
Complex czeta(Complex s, const ZetaOptions& options = {});

}  // namespace strahler::special
