#pragma once

#include <map>
#include <optional>
#include <vector>

#include "maxmod/cpoly.hpp"
#include "maxmod/recurrence.hpp"

namespace maxmod {

/// Monic symbol Psi^k + phi_1(z) Psi^{k-1} + ... + phi_k(z); the limit-
/// coefficient polynomial family of a recurrence over the parameter plane.
struct SymbolEquation {
  int k = 0;
  std::vector<ComplexPoly> phi;  // phi[i-1] = phi_i

  /// p_{n+1} = Q1 p_n + Q2 p_{n-1}  =>  Psi^2 - Q1 Psi - Q2.
  static SymbolEquation from_q_form(const ComplexPoly& q1, const ComplexPoly& q2) {
    SymbolEquation s;
    s.k = 2;
    s.phi = {Complex(-1) * q1, Complex(-1) * q2};
    return s;
  }
  static SymbolEquation limit_of(const RecurrenceSpec& spec) {
    SymbolEquation s;
    s.k = spec.k;
    for (const auto& r : spec.coeffs) s.phi.push_back(r.limit);
    return s;
  }

  ComplexPoly q1() const { return Complex(-1) * phi.at(0); }
  ComplexPoly q2() const { return Complex(-1) * phi.at(1); }

  /// The symbol as a polynomial in Psi at a fixed parameter value.
  ComplexPoly at(Complex z) const {
    CVec c(k + 1);
    c[k] = 1.0;
    for (int i = 1; i <= k; ++i) c[k - i] = phi[i - 1](z);
    return ComplexPoly(std::move(c));
  }

  void validate() const {
    if (k < 1 || static_cast<int>(phi.size()) != k) throw InvalidSpec("symbol needs k coefficients");
    if (phi.back().is_zero(0.0)) throw InvalidSpec("trailing symbol coefficient identically zero");
  }
};

struct PsiValue {
  bool nongeneric = false;
  Complex psi{};       // leading root when generic
  double marker = 0.0;  // |second| / |largest| root modulus
};

/// Leading root with the gap test; NONGENERIC when the top two moduli agree
/// within rel_tol.  Throws DegenerateLeading when phi_k(z) ~ 0.
PsiValue psi_max(const SymbolEquation& sym, Complex z, double rel_tol = 1e-9);

struct GridSpec {
  double re0 = -1, re1 = 1, im0 = -1, im1 = 1;
  int nre = 2, nim = 2;

  Complex at(int i, int j) const {
    return {re0 + (re1 - re0) * i / (nre - 1), im0 + (im1 - im0) * j / (nim - 1)};
  }
  double step_re() const { return (re1 - re0) / (nre - 1); }
  double step_im() const { return (im1 - im0) / (nim - 1); }
  double step() const { return std::max(step_re(), step_im()); }
  int cells() const { return nre * nim; }
};

struct GridField {
  GridSpec grid;
  struct Cell {
    Complex psi{};
    double marker = 0.0;
    bool nongeneric = false;
    bool degenerate = false;  // phi_k(z) ~ 0; no classification
  };
  std::vector<Cell> cells;  // index i * nim + j

  const Cell& at(int i, int j) const { return cells[size_t(i) * grid.nim + j]; }
};

GridField marker_grid(const SymbolEquation& sym, const GridSpec& grid, double rel_tol = 1e-9,
                      int jobs = 0);

/// Cells whose marker is a row/column local maximum above `floor`: a
/// resolution-adaptive level-set of the equal-modulus locus.
std::vector<Complex> marker_ridge_points(const GridField& field, double floor = 0.9);

struct DiscriminantCurve {
  struct Point {
    Complex z;
    double eps = 1.0;       // parametrization value; >= 1
    bool eps_inf = false;   // the eps -> infinity slice (roots of Q1)
    double marker = 0.0;    // verified marker at the point
  };
  std::vector<Point> points;
  std::vector<std::vector<int>> polylines;  // indices into points
};

struct EpsGrid {
  double ratio = 1.05;
  double max = 1e6;

  std::vector<double> values() const {
    std::vector<double> v;
    for (double e = 1.0; e <= max; e *= ratio) v.push_back(e);
    return v;
  }
};

/// k = 2 only: all z-roots of eps*Q1^2 + 4*Q2 over the eps grid plus the
/// eps -> infinity slice, verified against the marker predicate and chained
/// into polylines.
DiscriminantCurve trace_discriminant_eps(const SymbolEquation& sym,
                                         const std::vector<double>& eps_values,
                                         double rel_tol = 1e-6);

/// Roots in z of the discriminant of the symbol with respect to Psi,
/// via Sylvester determinants sampled on a circle and interpolated.
std::vector<Complex> branch_points(const SymbolEquation& sym);

struct RatioCell {
  Complex ratio{};
  bool converged = false;
  double deviation = 0.0;  // |ratio - psi_max| where psi_max defined
  bool has_psi = false;
  bool coeff_vanished = false;
};

struct RatioFieldOptions {
  double tol = 1e-8;
  double rel_tol = 1e-9;
  int jobs = 0;
};

/// Per-cell final ratio f_{n+1}/f_n of the scalar orbit started from the
/// initial polynomials evaluated at the cell.
std::vector<RatioCell> ratio_field(const RecurrenceSpec& spec,
                                   const std::vector<ComplexPoly>& initial, const GridSpec& grid,
                                   int n, const RatioFieldOptions& opts = {});

struct SigmaISet {
  struct Point {
    Complex z;
    int stability = 0;  // consecutive levels where the point recurred
  };
  std::vector<Point> points;
};

/// Stable isolated zeros: farther than isolation_radius from every curve
/// point and recurring across >= 3 consecutive levels within match_radius.
SigmaISet detect_sigma_I(const std::map<int, std::vector<Complex>>& zero_levels,
                         const std::vector<Complex>& curve_points, double isolation_radius,
                         double match_radius);

/// Zeros of the functional orbit at the requested levels (double-double
/// orbit + Aberth refinement).
std::map<int, std::vector<Complex>> zero_levels(const RecurrenceSpec& spec,
                                                const std::vector<ComplexPoly>& initial,
                                                const std::vector<int>& levels);

}  // namespace maxmod
