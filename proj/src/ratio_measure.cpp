#include "maxmod/ratio_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maxmod {

using std::numbers::pi;

ResidueMeasure residue_measure(const ComplexPoly& num, const ComplexPoly& den, double tol) {
  ComplexPoly d = den.trimmed(0.0);
  if (d.degree() < 1) throw InvalidSpec("residue_measure: denominator must be nonconstant");
  RootSet rs = roots(d, tol * tol);  // cluster radius tol for double roots
  ComplexPoly dd = d.derivative();
  double dscale = std::max(d.norm_inf(), 1e-300);
  double nscale = std::max(num.norm_inf(), 1e-300);

  ResidueMeasure out;
  for (const auto& r : rs.roots) {
    if (r.multiplicity > 1)
      throw MultiplePole("clustered denominator root at |z|=" + std::to_string(std::abs(r.value)));
    Complex dv = dd(r.value);
    if (std::abs(dv) <= tol * dscale)
      throw MultiplePole("denominator derivative vanishes at a pole");
    Complex nv = num(r.value);
    if (std::abs(nv) <= tol * tol * nscale * std::max(1.0, num.eval_scale(r.value) / nscale))
      throw InvalidSpec("residue_measure: numerator and denominator share a root");
    out.atoms.push_back({r.value, nv / dv});
  }
  return out;
}

ResidueMeasure family_ratio_residues(const RecurrenceSpec& spec,
                                     const std::vector<ComplexPoly>& initial, int n,
                                     Complex balance_center, double balance_scale) {
  // recenter on z = a + b*w so the orbit polynomials stay well conditioned
  const Complex a = balance_center;
  const Complex b = balance_scale;
  RecurrenceSpec bspec = spec;
  for (auto& rule : bspec.coeffs) {
    rule.limit = rule.limit.compose_affine(a, b);
    for (auto& tp : rule.table) tp = tp.compose_affine(a, b);
  }
  std::vector<ComplexPoly> binit;
  for (const auto& p : initial) binit.push_back(p.compose_affine(a, b));

  OrbitPair pair = polynomial_orbit_pair(bspec, binit, n);

  // residues of upper/lower at the zeros of lower, evaluated in dd
  PolyDD lower = pair.lower, upper = pair.upper;
  double m = lower.max_abs();
  int deg = int(lower.c.size()) - 1;
  while (deg > 0 && std::abs(lower.c[deg].to_std()) < 1e-28 * m) --deg;
  lower.c.resize(deg + 1);
  std::vector<Complex> zs = aberth_roots(lower);

  ResidueMeasure out;
  for (Complex w : zs) {
    dd::Complex z(w);
    dd::Complex nv = upper.eval(z);
    dd::Complex dv = lower.eval_derivative(z);
    out.atoms.push_back({w, (nv / dv).to_std()});
  }
  return out.affine_pushforward(a, b);
}

CaseClassification classify_case(const ComplexPoly& q1in, const ComplexPoly& q2in) {
  ComplexPoly q1 = q1in.trimmed(0.0), q2 = q2in.trimmed(0.0);
  for (const ComplexPoly* p : {&q1, &q2})
    for (Eigen::Index j = 0; j < p->coeffs().size(); ++j)
      if (std::abs(p->coeffs()[j].imag()) > 1e-12 * std::max(1.0, p->norm_inf()))
        throw NotRealCoefficients("classify_case needs real Q1, Q2");
  if (q1.degree() != 1) throw InvalidSpec("classify_case: deg Q1 must be 1");
  if (q2.degree() > 2) throw InvalidSpec("classify_case: deg Q2 must be <= 2");

  CaseClassification out;
  out.C = (-q1.coeff(0) / q1.coeff(1)).real();
  ComplexPoly disc = q1 * q1 + Complex(4) * q2;
  auto rs = raw_roots(disc);
  if (rs.size() != 2) throw InvalidSpec("classify_case: Q1^2+4Q2 must have degree 2");
  Complex D = rs[0], E = rs[1];
  double imag_scale = 1e-9 * std::max({1.0, std::abs(D), std::abs(E)});
  bool realDE = std::abs(D.imag()) < imag_scale && std::abs(E.imag()) < imag_scale;
  if (!realDE) {
    out.case_tag = 2;
    out.D = D.imag() > 0 ? D : E;
    out.E = D.imag() > 0 ? E : D;
    return out;
  }
  double d = D.real(), e = E.real();
  if (d > e) std::swap(d, e);
  out.D = d;
  out.E = e;
  out.case_tag = (out.C >= d && out.C <= e) ? 1 : 3;
  return out;
}

namespace {

Complex sqrt_negative_imag(Complex w) {
  Complex s = std::sqrt(w);
  if (s.imag() > 0) s = -s;
  return s;
}

}  // namespace

double interval_density(const ComplexPoly& q1, const ComplexPoly& q2, double x) {
  Complex rad = q1(x) * q1(x) + 4.0 * q2(x);
  if (rad.real() > 1e-12 * (1.0 + std::abs(rad)))
    throw OutsideSupport("Q1^2+4Q2 is positive at x; outside [D,E]");
  Complex s = sqrt_negative_imag(rad);
  return (Complex(0, 1) * s / (2 * pi)).real();
}

double tilde_density(const ComplexPoly& q1, const ComplexPoly& q2, double x) {
  Complex q2v = q2(x);
  if (std::abs(q2v) < 1e-13 * std::max(1.0, q2.norm_inf()))
    throw Q2VanishesOnSupport("Q2 vanishes inside the support");
  Complex rad = q1(x) * q1(x) + 4.0 * q2v;
  if (rad.real() > 1e-12 * (1.0 + std::abs(rad)))
    throw OutsideSupport("Q1^2+4Q2 is positive at x; outside [D,E]");
  Complex s = sqrt_negative_imag(rad);
  return (Complex(0, -1) * s / (2 * pi * q2v)).real();
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  // adaptive Simpson
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double x0, double x2, double f0, double f1, double f2, double whole, int depth) {
        double x05 = 0.5 * (x0 + 0.5 * (x0 + x2));
        double x15 = 0.5 * (0.5 * (x0 + x2) + x2);
        double fa = f(x05), fb = f(x15);
        double h = x2 - x0;
        double left = h / 12 * (f0 + 4 * fa + f1);
        double right = h / 12 * (f1 + 4 * fb + f2);
        if (depth > 48 || std::abs(left + right - whole) < 15 * tol)
          return left + right + (left + right - whole) / 15;
        return rec(x0, 0.5 * (x0 + x2), f0, fa, f1, left, depth + 1) +
               rec(0.5 * (x0 + x2), x2, f1, fb, f2, right, depth + 1);
      };
  double f0 = f(a), f2 = f(b), f1 = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (f0 + 4 * f1 + f2);
  return rec(a, b, f0, f1, f2, whole, 0);
}

namespace {

// integral over [D,E] with the square-root endpoint substitution
// x = D + (E-D) sin^2(theta)
double endpoint_weighted_integral(const std::function<double(double)>& f, double D, double E,
                                  double tol) {
  return integrate(
      [&](double th) {
        double s = std::sin(th), c = std::cos(th);
        double x = D + (E - D) * s * s;
        return f(x) * (E - D) * 2 * s * c;
      },
      0.0, pi / 2, tol);
}

}  // namespace

double interval_mass(const ComplexPoly& q1, const ComplexPoly& q2, double tol) {
  CaseClassification cc = classify_case(q1, q2);
  if (cc.case_tag == 2) throw InvalidSpec("interval_mass: case 2 has no interval part");
  return endpoint_weighted_integral([&](double x) { return interval_density(q1, q2, x); },
                                    cc.D.real(), cc.E.real(), tol);
}

double tilde_mass(const ComplexPoly& q1, const ComplexPoly& q2, double tol) {
  CaseClassification cc = classify_case(q1, q2);
  if (cc.case_tag != 1) throw InvalidSpec("tilde_mass: case 1 only");
  return endpoint_weighted_integral([&](double x) { return tilde_density(q1, q2, x); },
                                    cc.D.real(), cc.E.real(), tol);
}

Complex circle_density(const ComplexPoly& q2, double gamma) {
  if (q2.degree() > 2) throw InvalidSpec("circle_density: deg Q2 must be <= 2");
  double a = q2.coeff(2).real(), b = q2.coeff(1).real(), c = q2.coeff(0).real();
  if (std::abs(b) < 1e-13 * std::max(1.0, q2.norm_inf()))
    throw DegenerateB("circle geometry needs b != 0");
  Complex phase = std::pow(Complex(std::cos(gamma), std::sin(gamma)), 1.5);
  Complex rad = std::sqrt(Complex(c * (2 * b * b - (1 + 4 * a) * c * (1 - std::cos(gamma)))));
  return std::numbers::sqrt2 / std::abs(b) * phase * rad;
}

AnalyticDensity analytic_density(const ComplexPoly& q1, const ComplexPoly& q2) {
  CaseClassification cc = classify_case(q1, q2);
  AnalyticDensity out;
  out.q1 = q1;
  out.q2 = q2;
  double a = q2.coeff(2).real(), b = q2.coeff(1).real(), c = q2.coeff(0).real();
  (void)a;
  switch (cc.case_tag) {
    case 1:
      out.tag = AnalyticDensity::INTERVAL;
      out.D = cc.D.real();
      out.E = cc.E.real();
      break;
    case 2: {
      out.tag = AnalyticDensity::CIRCLE;
      if (std::abs(b) < 1e-13) throw DegenerateB("circle geometry needs b != 0");
      out.center = Complex(-c / b, 0.0);
      out.radius = std::abs(c / b);
      break;
    }
    case 3: {
      out.tag = AnalyticDensity::UNION;
      out.D = cc.D.real();
      out.E = cc.E.real();
      if (std::abs(b) < 1e-13) throw DegenerateB("circle geometry needs b != 0");
      double x0 = -2 * c / b;
      out.center = Complex(x0 / 2, 0.0);
      out.radius = std::abs(x0 / 2);
      break;
    }
  }
  return out;
}

AnalyticDensity union_support(const ComplexPoly& q1, const ComplexPoly& q2) {
  AnalyticDensity d = analytic_density(q1, q2);
  if (d.tag != AnalyticDensity::UNION) throw InvalidSpec("union_support: not a case-3 pair");
  return d;
}

namespace {

// branch-jump moments along the oriented support:
// d(nu) = (Psi1 - Psi2)(z) dz / (2 pi i), jump = sqrt(Q1^2 + 4 Q2)
Complex jump_sqrt(const AnalyticDensity& d, Complex z, Complex& prev) {
  Complex rad = d.q1(z) * d.q1(z) + 4.0 * d.q2(z);
  Complex s = std::sqrt(rad);
  if (std::abs(s - prev) > std::abs(s + prev)) s = -s;  // branch continuity
  prev = s;
  return s;
}

Complex interval_moment(const AnalyticDensity& d, int j) {
  // on [D,E] the jump is i*sqrt(|rad|); orientation of increasing x
  return integrate(
             [&](double th) {
               double s = std::sin(th), c = std::cos(th);
               double x = d.D + (d.E - d.D) * s * s;
               double w = (d.E - d.D) * 2 * s * c;
               double rho = interval_density(d.q1, d.q2, x);
               return std::pow(x, j) * rho * w;
             },
             0.0, pi / 2, 1e-11) *
         Complex(1.0);
}

Complex circle_moment(const AnalyticDensity& d, int j) {
  // arc through the root of Q1 between the angles of D and E
  auto branch_roots = raw_roots(d.q1 * d.q1 + Complex(4) * d.q2);
  Complex Dp = branch_roots[0], Ep = branch_roots[1];
  double gD = std::arg(Dp - d.center), gE = std::arg(Ep - d.center);
  Complex c_pt = -d.q1.coeff(0) / d.q1.coeff(1);
  double gC = std::arg(c_pt - d.center);
  double lo = std::min(gD, gE), hi = std::max(gD, gE);
  bool c_inside = gC > lo && gC < hi;
  double from = lo, to = hi;
  if (!c_inside) {  // go the other way around
    from = hi;
    to = lo + 2 * pi;
  }
  const int segments = 2048;
  Complex prev = 0;
  bool first = true;
  Complex acc = 0;
  for (int s = 0; s < segments; ++s) {
    double g0 = from + (to - from) * s / segments;
    double g1 = from + (to - from) * (s + 1) / segments;
    double gm = 0.5 * (g0 + g1);
    Complex z = d.center + std::polar(d.radius, gm);
    if (first) {
      prev = std::sqrt(d.q1(z) * d.q1(z) + 4.0 * d.q2(z));
      first = false;
    }
    Complex jump = jump_sqrt(d, z, prev);
    Complex dz = Complex(0, 1) * std::polar(d.radius, gm) * (g1 - g0);
    acc += std::pow(z, j) * jump * dz;
  }
  return acc / Complex(0, 2 * pi);
}

}  // namespace

std::vector<Complex> analytic_moments(const AnalyticDensity& d, int moments) {
  std::vector<Complex> out(moments);
  for (int j = 0; j < moments; ++j) {
    Complex m = 0;
    if (d.has_interval()) m += interval_moment(d, j);
    if (d.has_circle()) m += circle_moment(d, j);
    out[j] = m;
  }
  return out;
}

std::vector<double> weak_compare(const ResidueMeasure& empirical, const AnalyticDensity& analytic,
                                 int moments) {
  if (moments < 1) throw InvalidSpec("weak_compare: moments >= 1");
  std::vector<Complex> ana = analytic_moments(analytic, moments);
  Complex m0 = empirical.mass();
  double sigma = (std::abs(m0 - ana[0]) <= std::abs(m0 + ana[0])) ? 1.0 : -1.0;
  std::vector<double> out(moments);
  for (int j = 0; j < moments; ++j) out[j] = std::abs(empirical.moment(j) - sigma * ana[j]);
  return out;
}

}  // namespace maxmod
