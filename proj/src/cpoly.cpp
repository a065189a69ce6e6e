#include "maxmod/cpoly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace maxmod {

ComplexPoly ComplexPoly::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{Complex(1)};
  for (Complex r : roots) {
    std::vector<Complex> nc(c.size() + 1, Complex(0));
    for (size_t j = 0; j < c.size(); ++j) {
      nc[j + 1] += c[j];
      nc[j] -= r * c[j];
    }
    c = std::move(nc);
  }
  CVec v(c.size());
  for (size_t j = 0; j < c.size(); ++j) v[j] = lead * c[j];
  return ComplexPoly(std::move(v));
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
  Eigen::Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
  CVec c = CVec::Zero(n);
  c.head(a.coeffs_.size()) += a.coeffs_;
  c.head(b.coeffs_.size()) += b.coeffs_;
  return ComplexPoly(std::move(c));
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) {
  return a + (Complex(-1) * b);
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  CVec c = CVec::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
    for (Eigen::Index j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly operator*(Complex s, const ComplexPoly& a) {
  return ComplexPoly((s * a.coeffs_.array()).matrix().eval());
}

ComplexPoly ComplexPoly::compose_affine(Complex a, Complex b) const {
  // Horner in the substituted variable: p(a + b t)
  ComplexPoly acc = ComplexPoly::constant(coeffs_[coeffs_.size() - 1]);
  ComplexPoly lin{a, b};
  for (Eigen::Index j = coeffs_.size() - 2; j >= 0; --j)
    acc = acc * lin + ComplexPoly::constant(coeffs_[j]);
  return acc;
}

void sort_canonical(std::vector<Complex>& zs) {
  auto arg2pi = [](Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2 * std::numbers::pi;
    return a;
  };
  std::sort(zs.begin(), zs.end(), [&](Complex x, Complex y) {
    double mx = std::abs(x), my = std::abs(y);
    if (mx != my) return mx > my;
    return arg2pi(x) < arg2pi(y);
  });
}

ResultantValue sylvester_resultant(const ComplexPoly& fin, const ComplexPoly& gin) {
  ComplexPoly f = fin.trimmed(0.0), g = gin.trimmed(0.0);
  int m = f.degree(), n = g.degree();
  if (m < 1 || n < 1) throw InvalidSpec("sylvester_resultant needs deg >= 1 on both sides");
  CMat S = CMat::Zero(m + n, m + n);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) S(r, r + j) = g.coeff(n - j);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S(m + r, r + j) = f.coeff(m - j);

  Eigen::FullPivLU<CMat> lu(S);
  ResultantValue out;
  out.value = lu.determinant();
  // Hadamard bound on |det| gives the natural magnitude scale
  double had = 1.0;
  for (int r = 0; r < m + n; ++r) had *= S.row(r).norm();
  out.scale = std::max(had, 1e-300);
  out.ill_conditioned = std::abs(out.value) < 1e-10 * out.scale && std::abs(out.value) != 0.0;
  return out;
}

ComplexPoly divide_exact(const ComplexPoly& p, const ComplexPoly& d, int k, double tol) {
  ComplexPoly num = p.trimmed(0.0);
  ComplexPoly den = d.trimmed(0.0);
  if (den.degree() < 1) throw InvalidSpec("divide_exact: divisor must be nonconstant");
  if (num.degree() < k * den.degree()) throw InvalidSpec("divide_exact: deg p < k*deg d");
  double pnorm = num.norm1();
  for (int pass = 0; pass < k; ++pass) {
    int dn = num.degree(), dd = den.degree();
    CVec q = CVec::Zero(dn - dd + 1);
    CVec r = num.coeffs();
    for (int j = dn - dd; j >= 0; --j) {
      Complex c = r[j + dd] / den.leading();
      q[j] = c;
      for (int i = 0; i <= dd; ++i) r[j + i] -= c * den.coeff(i);
    }
    double rem = r.head(dd).cwiseAbs().sum();
    if (rem > tol * std::max(pnorm, 1.0))
      throw NotDivisible("remainder norm " + std::to_string(rem) + " exceeds tolerance");
    num = ComplexPoly(std::move(q));
  }
  return num;
}

ComplexPoly resultant_in_u(int deg_hint, const std::function<Complex(Complex)>& sampler) {
  using std::numbers::pi;
  const int M = deg_hint + 1;
  const double radius = 2.0;
  CVec vals(M);
  for (int s = 0; s < M; ++s) {
    Complex u = std::polar(radius, 2 * pi * s / M);
    vals[s] = sampler(u);
  }
  // inverse DFT with radius unwinding: c_j = (1/(M r^j)) sum_s vals_s w^{-js}
  CVec c = CVec::Zero(M);
  double rj = 1.0;
  for (int j = 0; j < M; ++j) {
    Complex acc = 0;
    for (int s = 0; s < M; ++s) acc += vals[s] * std::polar(1.0, -2 * pi * j * s / M);
    c[j] = acc / (double(M) * rj);
    rj *= radius;
  }
  return ComplexPoly(std::move(c));
}

}  // namespace maxmod
