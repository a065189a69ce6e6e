#include "maxmod/maxmod_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace maxmod {

MonicPoint MonicPoint::of(const ComplexPoly& pin) {
  ComplexPoly p = pin.trimmed(0.0);
  int k = p.degree();
  if (k < 1) throw InvalidSpec("MonicPoint needs degree >= 1");
  MonicPoint out;
  out.k = k;
  out.a.resize(k);
  Complex lead = p.leading();
  for (int i = 1; i <= k; ++i) out.a[i - 1] = p.coeff(k - i) / lead;
  return out;
}

MonicPoint MonicPoint::from_roots(const std::vector<Complex>& rs) {
  return MonicPoint::of(ComplexPoly::from_roots(rs));
}

MonicPoint MonicPoint::random(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MonicPoint out;
  out.k = k;
  out.a.resize(k);
  for (int i = 0; i < k; ++i) out.a[i] = Complex(g(rng), g(rng));
  return out;
}

MembershipVerdict membership_direct(const MonicPoint& p, double rel_tol) {
  std::vector<Complex> rs = raw_roots(p.to_poly());
  MembershipVerdict out;
  out.method = "DIRECT";
  const size_t n = rs.size();
  for (size_t i = 0; i < n && !out.in_xi_tilde; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double mi = std::abs(rs[i]), mj = std::abs(rs[j]);
      if (std::abs(mi - mj) <= rel_tol * std::max({mi, mj, 1e-300})) {
        out.in_xi_tilde = true;
        out.witness = {rs[i], rs[j]};
        break;
      }
    }
  }
  // roots come sorted by descending modulus; maxmod-nongeneric iff the top
  // modulus is shared (equal-modulus pair at the top)
  if (n >= 2) {
    double top = std::abs(rs[0]);
    out.in_xi = std::abs(top - std::abs(rs[1])) <= rel_tol * std::max(top, 1e-300);
  }
  if (out.in_xi && !out.in_xi_tilde) out.in_xi_tilde = true;  // containment by definition
  return out;
}

ComplexPoly r_u_polynomial(const MonicPoint& p) {
  if (p.k < 2) throw InvalidSpec("r_u_polynomial needs k >= 2");
  ComplexPoly P = p.to_poly();
  const int k = p.k;
  auto sampler = [&](Complex u) {
    // P(ut): coefficient of t^j is c_j u^j
    CVec c(k + 1);
    for (int j = 0; j <= k; ++j) c[j] = P.coeff(j) * std::pow(u, j);
    return sylvester_resultant(P, ComplexPoly(std::move(c))).value;
  };
  ComplexPoly r = resultant_in_u(k * k, sampler);
  double scale = r.norm_inf();
  if (scale < 1e-200) return ComplexPoly();  // identically zero
  return r.trimmed(1e-12 * scale);
}

ComplexPoly reduced_r(const MonicPoint& p) {
  ComplexPoly r = r_u_polynomial(p);
  if (r.is_zero(0.0)) throw IdenticallyZero("R(u) vanishes identically");
  ComplexPoly u_minus_1{Complex(-1), Complex(1)};
  ComplexPoly rt = divide_exact(r, u_minus_1, p.k, 1e-7);
  return rt;
}

MembershipVerdict membership_via_u(const MonicPoint& p, double tol) {
  ComplexPoly rt = reduced_r(p);
  MembershipVerdict out;
  out.method = "U_RESULTANT";
  std::vector<Complex> us = rt.degree() >= 1 ? raw_roots(rt) : std::vector<Complex>{};
  Complex u_best = 0;
  bool found = false;
  for (Complex u : us) {
    if (std::abs(std::abs(u) - 1.0) <= tol) {
      found = true;
      u_best = u;
      break;
    }
  }
  out.in_xi_tilde = found;
  if (found) {
    // recover the equal-modulus witness pair: roots with u*l_i ~ l_j
    std::vector<Complex> rs = raw_roots(p.to_poly());
    double best = 1e300;
    for (Complex li : rs)
      for (Complex lj : rs) {
        if (li == lj) continue;
        double d = std::abs(u_best * li - lj);
        if (d < best) {
          best = d;
          out.witness = {li, lj};
        }
      }
  }
  // maxmod part still needs the modulus ordering
  out.in_xi = membership_direct(p).in_xi;
  if (out.in_xi) out.in_xi_tilde = true;
  return out;
}

namespace {

// real/imaginary parts of sum_j c_j (1-i t)^{2j} (1+t^2)^{d-j} as real-
// coefficient polynomials in t
std::pair<ComplexPoly, ComplexPoly> theta_numerator_parts(const ComplexPoly& rt) {
  const int d = rt.degree();
  ComplexPoly one_minus_it_sq{Complex(1), Complex(0, -2), Complex(-1)};  // (1-it)^2
  ComplexPoly one_plus_t2{Complex(1), Complex(0), Complex(1)};
  // precompute powers
  std::vector<ComplexPoly> pw1(d + 1), pw2(d + 1);
  pw1[0] = ComplexPoly::constant(1);
  pw2[0] = ComplexPoly::constant(1);
  for (int j = 1; j <= d; ++j) {
    pw1[j] = pw1[j - 1] * one_minus_it_sq;
    pw2[j] = pw2[j - 1] * one_plus_t2;
  }
  ComplexPoly acc;
  for (int j = 0; j <= d; ++j) acc = acc + rt.coeff(j) * (pw1[j] * pw2[d - j]);
  CVec re(acc.coeffs().size()), im(acc.coeffs().size());
  for (Eigen::Index i = 0; i < acc.coeffs().size(); ++i) {
    re[i] = acc.coeffs()[i].real();
    im[i] = acc.coeffs()[i].imag();
  }
  return {ComplexPoly(std::move(re)), ComplexPoly(std::move(im))};
}

}  // namespace

double theta_membership(const MonicPoint& p) {
  ComplexPoly rt = reduced_r(p);
  double rt_scale = std::max(rt.norm_inf(), 1e-300);

  // u = -1 is the one point the rational parametrization misses
  double at_minus_one = std::abs(rt(Complex(-1))) / rt_scale;

  auto [re, im] = theta_numerator_parts(rt);
  double re_scale = re.norm_inf(), im_scale = im.norm_inf();
  ComplexPoly ret = re.trimmed(1e-13 * std::max(re_scale, 1e-300));
  ComplexPoly imt = im.trimmed(1e-13 * std::max(im_scale, 1e-300));
  double res_norm;
  if (ret.degree() < 1 || imt.degree() < 1) {
    // a constant nonzero part means no real common root at all
    res_norm = (ret.degree() < 1 && ret.norm_inf() < 1e-10 * rt_scale) ||
                       (imt.degree() < 1 && imt.norm_inf() < 1e-10 * rt_scale)
                   ? 0.0
                   : 1.0;
  } else {
    ResultantValue rv = sylvester_resultant(ret, imt);
    res_norm = std::abs(rv.value) / rv.scale;
  }
  return std::min(res_norm, at_minus_one);
}

MonicPoint quasihomogeneous_scale(const MonicPoint& p, double r) {
  if (!(r > 0)) throw InvalidSpec("quasihomogeneous scale needs r > 0");
  MonicPoint out = p;
  double ri = 1.0;
  for (int i = 0; i < p.k; ++i) {
    ri *= r;
    out.a[i] = p.a[i] * ri;
  }
  return out;
}

DegreeAudit degree_audit(int k, std::uint64_t seed) {
  if (k != 2 && k != 3) throw InvalidSpec("degree_audit covers k in {2,3}");
  std::mt19937_64 rng(seed);
  MonicPoint sample = MonicPoint::random(k, rng);

  DegreeAudit out;
  out.k = k;
  out.seed = seed;
  out.bound = (4 * k - 1) * (4 * k - 2);

  ComplexPoly r = r_u_polynomial(sample);
  out.deg_R_u = r.trimmed(1e-9 * std::max(r.norm_inf(), 1e-300)).degree();
  ComplexPoly rt = reduced_r(sample);
  out.deg_R_tilde = rt.trimmed(1e-9 * std::max(rt.norm_inf(), 1e-300)).degree();
  auto [re, im] = theta_numerator_parts(rt);
  out.deg_theta_re = re.trimmed(1e-9 * std::max(re.norm_inf(), 1e-300)).degree();
  out.deg_theta_im = im.trimmed(1e-9 * std::max(im.norm_inf(), 1e-300)).degree();
  return out;
}

}  // namespace maxmod
