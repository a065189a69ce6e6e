#pragma once

#include <vector>

#include "maxmod/cpoly.hpp"
#include "maxmod/recurrence.hpp"

namespace maxmod {

/// Finite complex atomic measure: (pole, weight) pairs, weights are the
/// residues when built from a rational function with simple poles.
struct ResidueMeasure {
  struct Atom {
    Complex pole;
    Complex weight;
  };
  std::vector<Atom> atoms;
  bool simple_poles_only = true;

  Complex moment(int j) const {
    Complex s = 0;
    for (const auto& a : atoms) s += a.weight * std::pow(a.pole, j);
    return s;
  }
  Complex mass() const { return moment(0); }

  /// Push forward through z = a + b*w (poles move, weights pick up b).
  ResidueMeasure affine_pushforward(Complex a, Complex b) const {
    ResidueMeasure out;
    out.simple_poles_only = simple_poles_only;
    for (const auto& at : atoms) out.atoms.push_back({a + b * at.pole, b * at.weight});
    return out;
  }
};

/// Atoms at the zeros z_m of den with weight num(z_m)/den'(z_m).  Requires
/// simple poles (within tol) and num, den coprime (within tol).
ResidueMeasure residue_measure(const ComplexPoly& num, const ComplexPoly& den, double tol = 1e-8);

/// Residue measure of f_{n+1}/f_n for the orbit of a recurrence with
/// polynomial initial tuple.  Computed in double-double at a common scale;
/// `balance` recenters the computation on z = center + scale*w first.
ResidueMeasure family_ratio_residues(const RecurrenceSpec& spec,
                                     const std::vector<ComplexPoly>& initial, int n,
                                     Complex balance_center = 0.0, double balance_scale = 1.0);

struct CaseClassification {
  int case_tag = 0;  // 1, 2, or 3
  double C = 0;      // root of Q1
  Complex D{}, E{};  // roots of Q1^2 + 4 Q2
};

/// Three-case split for real Q1 (deg 1) and Q2 (deg <= 2).
CaseClassification classify_case(const ComplexPoly& q1, const ComplexPoly& q2);

/// Case 1 density (1/2pi) sqrt(-(Q1^2+4Q2)) on [D,E]; the radicand is
/// negative there and the branch with negative imaginary part makes the
/// density real nonnegative.
double interval_density(const ComplexPoly& q1, const ComplexPoly& q2, double x);

/// Inverse-ratio density -(i/2pi) sqrt(Q1^2+4Q2)/Q2; a probability density.
double tilde_density(const ComplexPoly& q1, const ComplexPoly& q2, double x);

double interval_mass(const ComplexPoly& q1, const ComplexPoly& q2, double tol = 1e-12);
double tilde_mass(const ComplexPoly& q1, const ComplexPoly& q2, double tol = 1e-10);

/// Case 2 density at angle gamma from the circle center (-c/b, 0), for
/// Q1 = z (normalized) and Q2 = a z^2 + b z + c.
Complex circle_density(const ComplexPoly& q2, double gamma);

struct AnalyticDensity {
  enum Tag { INTERVAL, CIRCLE, UNION };
  Tag tag = INTERVAL;
  ComplexPoly q1, q2;
  double D = 0, E = 0;        // interval part when applicable
  Complex center{};           // circle part when applicable
  double radius = 0;

  bool has_interval() const { return tag != CIRCLE; }
  bool has_circle() const { return tag != INTERVAL; }
};

/// Analytic density data for the classified case; UNION carries both parts.
AnalyticDensity analytic_density(const ComplexPoly& q1, const ComplexPoly& q2);
AnalyticDensity union_support(const ComplexPoly& q1, const ComplexPoly& q2);

/// Moments of the analytic limit measure via the branch-jump rule
/// d(nu) = (Psi_1 - Psi_2) dz / (2 pi i) along the oriented support.
std::vector<Complex> analytic_moments(const AnalyticDensity& d, int moments);

/// |moment_j(empirical) - sigma*moment_j(analytic)| for j < moments, with the
/// coorientation sign sigma in {+1,-1} aligned on the mass.
std::vector<double> weak_compare(const ResidueMeasure& empirical, const AnalyticDensity& analytic,
                                 int moments);

/// Adaptive Simpson quadrature (test oracle quality, tol ~ 1e-12).
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace maxmod
