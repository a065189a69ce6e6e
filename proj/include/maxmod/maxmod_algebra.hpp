#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "maxmod/cpoly.hpp"

namespace maxmod {

/// Point of Pol_k: the monic polynomial t^k + a_1 t^{k-1} + ... + a_k.
struct MonicPoint {
  int k = 0;
  CVec a;  // a[i-1] = a_i

  ComplexPoly to_poly() const {
    CVec c(k + 1);
    c[k] = 1.0;
    for (int i = 1; i <= k; ++i) c[k - i] = a[i - 1];
    return ComplexPoly(std::move(c));
  }
  static MonicPoint of(const ComplexPoly& p);
  static MonicPoint from_roots(const std::vector<Complex>& rs);
  static MonicPoint random(int k, std::mt19937_64& rng);
};

struct MembershipVerdict {
  bool in_xi_tilde = false;  // two roots of equal modulus
  bool in_xi = false;        // maxmod-nongeneric
  std::array<Complex, 2> witness{};
  std::string method;
};

/// Root all pairs and compare moduli directly.
MembershipVerdict membership_direct(const MonicPoint& p, double rel_tol = 1e-9);

/// R(u) = Res_t(P(t), P(ut)), by evaluation-interpolation on a circle.
/// Degree k^2 generically; identically zero iff P has a repeated root at 0
/// scale (shared root for every u).
ComplexPoly r_u_polynomial(const MonicPoint& p);

/// R(u) / (u-1)^k; coprime with u-1 for squarefree P.
ComplexPoly reduced_r(const MonicPoint& p);

/// Member iff reduced R has a root on the unit circle (u = 1 already
/// divided out structurally).
MembershipVerdict membership_via_u(const MonicPoint& p, double tol = 1e-6);

/// Substitute u = (1-i*theta)^2 / (1+theta^2) into reduced R, clear the
/// denominator, and take |Res_theta(Re, Im)| normalized by coefficient
/// norms.  The parametrization misses u = -1, which is tested directly.
/// ~0 means membership in the analytic continuation.
double theta_membership(const MonicPoint& p);

/// a_i -> r^i a_i; multiplies every root by r.
MonicPoint quasihomogeneous_scale(const MonicPoint& p, double r);

struct DegreeAudit {
  int k = 0;
  int bound = 0;          // (4k-1)(4k-2)
  int deg_R_u = 0;        // measured degree of R(u) on a random sample
  int deg_R_tilde = 0;    // measured degree of reduced R
  int deg_theta_re = 0;   // theta-substitution numerator degrees
  int deg_theta_im = 0;
  std::uint64_t seed = 0;
};

DegreeAudit degree_audit(int k, std::uint64_t seed);

}  // namespace maxmod
