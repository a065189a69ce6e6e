#pragma once

#include <vector>

#include "maxmod/cpoly.hpp"
#include "maxmod/dd.hpp"

namespace maxmod {

/// Polynomial with double-double coefficients, ascending order.  Used for
/// high-index orbits of polynomial recurrences whose monomial form sheds
/// roughly one bit of accuracy per step.
struct PolyDD {
  std::vector<dd::Complex> c;

  static PolyDD from(const ComplexPoly& p) {
    PolyDD out;
    out.c.reserve(p.coeffs().size());
    for (Eigen::Index j = 0; j < p.coeffs().size(); ++j) out.c.emplace_back(p.coeffs()[j]);
    return out;
  }
  ComplexPoly to_double() const {
    CVec v(c.size());
    for (size_t j = 0; j < c.size(); ++j) v[j] = c[j].to_std();
    return ComplexPoly(std::move(v));
  }
  int degree() const;
  dd::Complex eval(dd::Complex z) const;
  dd::Complex eval_derivative(dd::Complex z) const;
  double max_abs() const;
  void scale_down(double s);
};

PolyDD mul(const PolyDD& a, const PolyDD& b);
PolyDD add(const PolyDD& a, const PolyDD& b);

/// Aberth-Ehrlich simultaneous iteration in double-double precision.
/// Seeds default to the double companion-matrix roots.
std::vector<Complex> aberth_roots(const PolyDD& p,
                                  std::vector<Complex> seeds = {},
                                  int max_sweeps = 120);

namespace detail {
std::vector<Complex> companion_roots(const ComplexPoly& p);
void newton_polish(const ComplexPoly& p, std::vector<Complex>& roots, int iters = 4);
}  // namespace detail

}  // namespace maxmod
