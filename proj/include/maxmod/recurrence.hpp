#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "maxmod/cpoly.hpp"
#include "maxmod/rootfind.hpp"

namespace maxmod {

/// Coefficient provider for one slot of a length-(k+1) relation.  Either a
/// fixed polynomial in z or an n-indexed generator with a declared limit.
struct CoeffRule {
  enum class Kind { Fixed, Varying };
  Kind kind = Kind::Fixed;
  ComplexPoly limit;

  // varying rules are named builtins so specs stay serializable
  std::string rule_name = "constant";
  Complex c{};                     // limit_plus_cn_over_n perturbation
  std::vector<ComplexPoly> table;  // explicit heads, limit afterwards

  static CoeffRule fixed(ComplexPoly p) {
    CoeffRule r;
    r.kind = Kind::Fixed;
    r.limit = std::move(p);
    return r;
  }
  static CoeffRule varying_cn(ComplexPoly limit, Complex c) {
    CoeffRule r;
    r.kind = Kind::Varying;
    r.rule_name = "limit_plus_cn_over_n";
    r.limit = std::move(limit);
    r.c = c;
    return r;
  }
  static CoeffRule varying_table(ComplexPoly limit, std::vector<ComplexPoly> heads) {
    CoeffRule r;
    r.kind = Kind::Varying;
    r.rule_name = "table";
    r.limit = std::move(limit);
    r.table = std::move(heads);
    return r;
  }

  /// Coefficient polynomial at step n >= 1.  Stateless, so orbits can be
  /// re-run independently.
  ComplexPoly at(int n) const;
};

/// u_{n+k} + alpha_{1,n} u_{n+k-1} + ... + alpha_{k,n} u_n = 0, with the
/// standing hypothesis that the trailing coefficient never vanishes on the
/// working domain.
struct RecurrenceSpec {
  int k = 0;
  std::vector<CoeffRule> coeffs;  // coeffs[i-1] = alpha_i

  bool is_constant() const {
    for (const auto& r : coeffs)
      if (r.kind != CoeffRule::Kind::Fixed) return false;
    return true;
  }

  /// p_{n+1} = Q_1 p_n + ... + Q_k p_{n-k+1}  =>  alpha_i = -Q_i.
  static RecurrenceSpec from_q_form(std::vector<ComplexPoly> Q) {
    RecurrenceSpec s;
    s.k = static_cast<int>(Q.size());
    for (auto& q : Q) s.coeffs.push_back(CoeffRule::fixed(Complex(-1) * q));
    return s;
  }

  void validate() const;
};

/// Monic characteristic/limit polynomial t^k + alpha_1(z) t^{k-1} + ... + alpha_k(z).
ComplexPoly char_poly(const RecurrenceSpec& spec, Complex z);

enum class SpectralClass { MaxmodGeneric, NongenericDominant, NongenericNondominant };

struct ClosedForm {
  struct Term {
    Complex lambda;
    ComplexPoly poly;  // P_i(n), degree <= multiplicity-1
  };
  std::vector<Term> terms;

  Complex eval(int n) const;
};

struct SpectralData {
  RootSet root_set;
  SpectralClass classification;
  Complex lambda_max{};  // valid iff MaxmodGeneric
  Complex dominant{};    // valid iff NongenericDominant
};

/// Classification per the maxmod dichotomy; for nongeneric spectra the
/// initial tuple decides (through the degrees of the activated polynomial
/// coefficients) whether a single dominant term exists.
SpectralData spectral_data(const ComplexPoly& p, const std::vector<Complex>& initial,
                           double tol = 1e-9, double rel_tol = 1e-9);

/// Solve the confluent Vandermonde system matching u_0..u_{k-1}.
ClosedForm closed_form(const ComplexPoly& p, const std::vector<Complex>& initial);

struct SlowGrowthFunctional {
  CVec normal;  // kappa, max-modulus entry normalized to 1
};

/// kappa with kappa . initial = 0 iff the initial tuple is slow growing;
/// requires a maxmod-generic polynomial.
SlowGrowthFunctional slow_growth_functional(const ComplexPoly& p, double rel_tol = 1e-9);

struct IterateOptions {
  bool normalized = false;
  double tol = 1e-13;  // trailing-coefficient vanishing threshold
};

struct IterateResult {
  std::vector<Complex> values;     // u_0..u_nmax, rescaled when normalized
  std::vector<double> log_scale;   // true u_j = values[j] * exp(log_scale[j])
  std::vector<Complex> ratios;     // ratios[j] = u_{j+1}/u_j, scale-free
};

IterateResult iterate(const RecurrenceSpec& spec, Complex z, const std::vector<Complex>& initial,
                      int n_max, const IterateOptions& opts = {});

/// Functional orbit: run the relation on a polynomial initial tuple and
/// return the requested levels.  Double-double arithmetic with a common
/// scale across the sliding window; the monomial form of these orbits loses
/// about one bit per step in plain doubles.  Each returned level carries its
/// own scale (orbits are scale-free for zero loci and ratios).
std::map<int, PolyDD> polynomial_orbit(const RecurrenceSpec& spec,
                                       const std::vector<ComplexPoly>& initial,
                                       const std::vector<int>& levels);

/// f_n and f_{n+1} at a common scale, as needed for residues of the ratio.
struct OrbitPair {
  PolyDD lower;  // f_n
  PolyDD upper;  // f_{n+1}
};
OrbitPair polynomial_orbit_pair(const RecurrenceSpec& spec,
                                const std::vector<ComplexPoly>& initial, int n);

}  // namespace maxmod
