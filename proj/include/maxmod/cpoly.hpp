#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

#include "maxmod/errors.hpp"

namespace maxmod {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Dense univariate polynomial over C, coefficients in ascending degree
/// order (coeffs[j] multiplies t^j).  The zero polynomial is a single zero
/// coefficient and is distinct from the constant 1.
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_(CVec::Zero(1)) {}
  explicit ComplexPoly(CVec coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = CVec::Zero(1);
  }
  ComplexPoly(std::initializer_list<Complex> cs) : coeffs_(CVec::Zero(std::max<size_t>(cs.size(), 1))) {
    int i = 0;
    for (Complex c : cs) coeffs_[i++] = c;
  }

  static ComplexPoly constant(Complex c) { return ComplexPoly{c}; }
  static ComplexPoly variable() { return ComplexPoly{Complex(0), Complex(1)}; }
  static ComplexPoly from_roots(const std::vector<Complex>& roots, Complex lead = Complex(1));

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero(double tol = 0.0) const { return coeffs_.cwiseAbs().maxCoeff() <= tol; }

  const CVec& coeffs() const { return coeffs_; }
  Complex coeff(int j) const { return j >= 0 && j < coeffs_.size() ? coeffs_[j] : Complex(0); }
  Complex leading() const { return coeffs_[coeffs_.size() - 1]; }

  Complex operator()(Complex z) const {
    Complex acc = coeffs_[coeffs_.size() - 1];
    for (Eigen::Index j = coeffs_.size() - 2; j >= 0; --j) acc = acc * z + coeffs_[j];
    return acc;
  }

  /// Drop trailing coefficients of modulus <= tol (absolute).  Keeps at
  /// least one coefficient so the zero polynomial stays representable.
  ComplexPoly trimmed(double tol) const {
    Eigen::Index n = coeffs_.size();
    while (n > 1 && std::abs(coeffs_[n - 1]) <= tol) --n;
    return ComplexPoly(coeffs_.head(n).eval());
  }

  ComplexPoly derivative() const {
    if (degree() < 1) return ComplexPoly();
    CVec d(coeffs_.size() - 1);
    for (Eigen::Index j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * double(j);
    return ComplexPoly(std::move(d));
  }

  /// p(a + b*t): affine substitution, used to rebalance interval-supported
  /// families onto well-conditioned domains.
  ComplexPoly compose_affine(Complex a, Complex b) const;

  double norm1() const { return coeffs_.cwiseAbs().sum(); }
  double norm_inf() const { return coeffs_.cwiseAbs().maxCoeff(); }

  /// Scale of the evaluation at z: sum_j |c_j||z|^j; |p(z)| / eval_scale is a
  /// backward-error style residual.
  double eval_scale(Complex z) const {
    double az = std::abs(z), pw = 1.0, s = 0.0;
    for (Eigen::Index j = 0; j < coeffs_.size(); ++j) {
      s += std::abs(coeffs_[j]) * pw;
      pw *= az;
    }
    return s;
  }

  friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(Complex s, const ComplexPoly& a);

 private:
  CVec coeffs_;
};

/// Roots with multiplicities, sorted by descending modulus; ties broken by
/// ascending principal argument in [0, 2*pi).
struct RootSet {
  struct Entry {
    Complex value;
    int multiplicity;
  };
  std::vector<Entry> roots;
  double residual = 0.0;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
  Complex max_modulus_root() const { return roots.front().value; }
};

/// All roots without multiplicity clustering, in the canonical order.
std::vector<Complex> raw_roots(const ComplexPoly& p);

/// Companion-matrix roots with Newton polish and multiplicity clustering.
/// The cluster radius for a candidate m-fold root scales like tol^(1/m).
RootSet roots(const ComplexPoly& p, double tol = 1e-12);

void sort_canonical(std::vector<Complex>& zs);

struct ResultantValue {
  Complex value;
  double scale = 1.0;        // Hadamard-type magnitude bound used for conditioning
  bool ill_conditioned = false;  // |value| below conditioning threshold but not structurally zero
};

/// Determinant of the (deg f + deg g)-square Sylvester matrix.
ResultantValue sylvester_resultant(const ComplexPoly& f, const ComplexPoly& g);

/// Quotient p / d^k; throws NotDivisible when the remainder exceeds
/// tol * ||p||_1.
ComplexPoly divide_exact(const ComplexPoly& p, const ComplexPoly& d, int k, double tol = 1e-9);

/// R(u) = Res_t(f(t), g(u, t)) for g given by a sampler, recovered by
/// evaluation on a circle of radius 2 and inverse DFT.  deg_hint bounds the
/// degree of R in u.
ComplexPoly resultant_in_u(int deg_hint,
                           const std::function<Complex(Complex)>& sampler);

}  // namespace maxmod
