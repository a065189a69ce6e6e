#include "maxmod/recurrence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace maxmod {

ComplexPoly CoeffRule::at(int n) const {
  if (kind == Kind::Fixed) return limit;
  if (rule_name == "constant") return limit;
  if (rule_name == "limit_plus_cn_over_n") return limit + ComplexPoly::constant(c / double(n));
  if (rule_name == "table") {
    if (n >= 1 && n <= static_cast<int>(table.size())) return table[n - 1];
    return limit;
  }
  throw InvalidSpec("unknown varying rule '" + rule_name + "'");
}

void RecurrenceSpec::validate() const {
  if (k < 1) throw InvalidSpec("recurrence order k must be >= 1");
  if (static_cast<int>(coeffs.size()) != k) throw InvalidSpec("need exactly k coefficient rules");
  for (const auto& r : coeffs) {
    if (r.kind == CoeffRule::Kind::Varying && r.rule_name != "constant" &&
        r.rule_name != "limit_plus_cn_over_n" && r.rule_name != "table")
      throw InvalidSpec("unknown varying rule '" + r.rule_name + "'");
  }
  if (coeffs.back().limit.is_zero(0.0))
    throw InvalidSpec("trailing coefficient limit is identically zero");
}

ComplexPoly char_poly(const RecurrenceSpec& spec, Complex z) {
  spec.validate();
  CVec c(spec.k + 1);
  c[spec.k] = 1.0;
  for (int i = 1; i <= spec.k; ++i) c[spec.k - i] = spec.coeffs[i - 1].limit(z);
  return ComplexPoly(std::move(c));
}

namespace {

// confluent Vandermonde: row n, columns (i,l) with value n^l lambda_i^n
CMat confluent_vandermonde(const RootSet& rs, int k) {
  CMat V(k, k);
  for (int n = 0; n < k; ++n) {
    int col = 0;
    for (const auto& root : rs.roots) {
      Complex ln = std::pow(root.value, n);
      double nl = 1.0;
      for (int l = 0; l < root.multiplicity; ++l) {
        V(n, col++) = ln * nl;
        nl *= n;
      }
    }
  }
  return V;
}

}  // namespace

ClosedForm closed_form(const ComplexPoly& p, const std::vector<Complex>& initial) {
  RootSet rs = roots(p);
  int k = p.trimmed(0.0).degree();
  if (static_cast<int>(initial.size()) != k)
    throw InvalidSpec("closed_form: initial tuple length must equal degree");
  CMat V = confluent_vandermonde(rs, k);
  CVec u(k);
  for (int n = 0; n < k; ++n) u[n] = initial[n];
  Eigen::FullPivLU<CMat> lu(V);
  if (lu.rank() < k) throw IllConditioned("confluent Vandermonde is singular");
  CVec coef = lu.solve(u);
  double resid = (V * coef - u).norm();
  if (resid > 1e-6 * (1.0 + u.norm()))
    throw IllConditioned("confluent Vandermonde solve residual " + std::to_string(resid));

  ClosedForm cf;
  int col = 0;
  for (const auto& root : rs.roots) {
    CVec pc(root.multiplicity);
    for (int l = 0; l < root.multiplicity; ++l) pc[l] = coef[col++];
    cf.terms.push_back({root.value, ComplexPoly(std::move(pc))});
  }
  return cf;
}

Complex ClosedForm::eval(int n) const {
  Complex s = 0;
  for (const auto& t : terms) s += t.poly(Complex(n)) * std::pow(t.lambda, n);
  return s;
}

SpectralData spectral_data(const ComplexPoly& p, const std::vector<Complex>& initial,
                           double tol, double rel_tol) {
  ComplexPoly q = p.trimmed(0.0);
  if (std::abs(q.coeff(0)) <= tol * std::max(1.0, q.norm_inf()))
    throw DegenerateConstantTerm("constant term below tolerance");

  SpectralData out;
  out.root_set = roots(q);
  const auto& rr = out.root_set.roots;
  double top = std::abs(rr.front().value);

  std::vector<int> max_idx;
  for (size_t i = 0; i < rr.size(); ++i)
    if (std::abs(std::abs(rr[i].value) - top) <= rel_tol * top) max_idx.push_back(int(i));

  if (max_idx.size() == 1 && rr[max_idx[0]].multiplicity == 1) {
    out.classification = SpectralClass::MaxmodGeneric;
    out.lambda_max = rr[max_idx[0]].value;
    return out;
  }

  // nongeneric: the orbit converges iff a single max-modulus root carries the
  // strictly largest activated polynomial degree
  ClosedForm cf = closed_form(q, initial);
  double scale = 0.0;
  for (const auto& t : cf.terms) scale = std::max(scale, t.poly.norm_inf());
  double coef_tol = 1e-8 * std::max(scale, 1e-30);

  int best = -1, best_deg = -1, ties = 0;
  for (int i : max_idx) {
    const ComplexPoly& P = cf.terms[i].poly;
    int deg = -1;
    for (int l = P.degree(); l >= 0; --l)
      if (std::abs(P.coeff(l)) > coef_tol) {
        deg = l;
        break;
      }
    if (deg > best_deg) {
      best_deg = deg;
      best = i;
      ties = 1;
    } else if (deg == best_deg && deg >= 0) {
      ++ties;
    }
  }

  if (best_deg >= 0 && ties == 1) {
    out.classification = SpectralClass::NongenericDominant;
    out.dominant = cf.terms[best].lambda;
  } else {
    out.classification = SpectralClass::NongenericNondominant;
  }
  return out;
}

SlowGrowthFunctional slow_growth_functional(const ComplexPoly& p, double rel_tol) {
  ComplexPoly q = p.trimmed(0.0);
  int k = q.degree();
  RootSet rs = roots(q);
  double top = std::abs(rs.roots.front().value);
  int n_at_top = 0;
  for (const auto& r : rs.roots)
    if (std::abs(std::abs(r.value) - top) <= rel_tol * top) n_at_top += r.multiplicity;
  if (n_at_top != 1) throw NoSpectralGap("slow_growth_functional requires a maxmod-generic polynomial");

  CMat V = confluent_vandermonde(rs, k);
  // kappa_max is the lambda_max row of V^{-1}; roots are sorted by modulus so
  // that row is index 0
  CVec e = CVec::Zero(k);
  e[0] = 1.0;
  Eigen::FullPivLU<CMat> lu(V.transpose());
  if (lu.rank() < k) throw IllConditioned("confluent Vandermonde is singular");
  CVec kappa = lu.solve(e);

  int arg = 0;
  for (int i = 1; i < k; ++i)
    if (std::abs(kappa[i]) > std::abs(kappa[arg])) arg = i;
  if (std::abs(kappa[arg]) == 0.0) throw IllConditioned("slow-growth functional vanished");
  kappa /= kappa[arg];
  return SlowGrowthFunctional{std::move(kappa)};
}

IterateResult iterate(const RecurrenceSpec& spec, Complex z, const std::vector<Complex>& initial,
                      int n_max, const IterateOptions& opts) {
  spec.validate();
  const int k = spec.k;
  if (static_cast<int>(initial.size()) != k) throw InvalidSpec("iterate: initial tuple length != k");

  IterateResult out;
  out.values = initial;
  out.log_scale.assign(initial.size(), 0.0);
  double logs = 0.0;

  std::vector<Complex> window = initial;  // window[j] = u_{n-k+1+j} shares one scale
  for (int idx = k; idx <= n_max; ++idx) {
    int n = idx - k + 1;  // generator step, n >= 1
    Complex alpha_k = spec.coeffs[k - 1].at(n)(z);
    if (std::abs(alpha_k) <= opts.tol)
      throw CoefficientVanished(n, "trailing coefficient vanished during iteration");
    Complex acc = 0;
    for (int i = 1; i <= k; ++i) acc -= spec.coeffs[i - 1].at(n)(z) * window[k - i];
    window.erase(window.begin());
    window.push_back(acc);
    if (opts.normalized) {
      double m = 0.0;
      for (Complex w : window) m = std::max(m, std::abs(w));
      if (m > 0.0 && (m > 1e100 || m < 1e-100)) {
        for (Complex& w : window) w /= m;
        logs += std::log(m);
        acc = window.back();
      }
    }
    out.values.push_back(acc);
    out.log_scale.push_back(logs);
  }
  out.ratios.resize(out.values.size() - 1);
  for (size_t j = 0; j + 1 < out.values.size(); ++j) {
    double ds = out.log_scale[j + 1] - out.log_scale[j];
    out.ratios[j] = out.values[j + 1] / out.values[j] * std::exp(ds);
  }
  return out;
}

std::map<int, PolyDD> polynomial_orbit(const RecurrenceSpec& spec,
                                       const std::vector<ComplexPoly>& initial,
                                       const std::vector<int>& levels) {
  spec.validate();
  const int k = spec.k;
  if (static_cast<int>(initial.size()) != k)
    throw InvalidSpec("polynomial_orbit: initial tuple length != k");
  int n_max = *std::max_element(levels.begin(), levels.end());

  std::vector<PolyDD> window;
  for (const auto& p : initial) window.push_back(PolyDD::from(p));

  std::map<int, PolyDD> out;
  auto keep = [&](int idx, const PolyDD& p) {
    if (std::find(levels.begin(), levels.end(), idx) != levels.end()) out[idx] = p;
  };
  for (int j = 0; j < k; ++j) keep(j, window[j]);

  for (int idx = k; idx <= n_max; ++idx) {
    int n = idx - k + 1;
    PolyDD nxt;
    nxt.c.assign(1, dd::Complex(0.0));
    for (int i = 1; i <= k; ++i) {
      PolyDD a = PolyDD::from(Complex(-1) * spec.coeffs[i - 1].at(n));
      nxt = add(nxt, mul(a, window[k - i]));
    }
    window.erase(window.begin());
    window.push_back(nxt);
    double m = 0.0;
    for (const auto& w : window) m = std::max(m, w.max_abs());
    if (m > 0.0) {
      for (auto& w : window) w.scale_down(m);
    }
    keep(idx, window.back());
  }
  return out;
}

OrbitPair polynomial_orbit_pair(const RecurrenceSpec& spec,
                                const std::vector<ComplexPoly>& initial, int n) {
  if (spec.k < 2) throw InvalidSpec("polynomial_orbit_pair needs k >= 2");
  spec.validate();
  const int k = spec.k;
  std::vector<PolyDD> window;
  for (const auto& p : initial) window.push_back(PolyDD::from(p));
  for (int idx = k; idx <= n + 1; ++idx) {
    int step = idx - k + 1;
    PolyDD nxt;
    nxt.c.assign(1, dd::Complex(0.0));
    for (int i = 1; i <= k; ++i) {
      PolyDD a = PolyDD::from(Complex(-1) * spec.coeffs[i - 1].at(step));
      nxt = add(nxt, mul(a, window[k - i]));
    }
    window.erase(window.begin());
    window.push_back(nxt);
    double m = 0.0;
    for (const auto& w : window) m = std::max(m, w.max_abs());
    if (m > 0.0)
      for (auto& w : window) w.scale_down(m);
  }
  if (n + 1 < k) throw InvalidSpec("polynomial_orbit_pair: n too small");
  return OrbitPair{window[k - 2], window[k - 1]};
}

}  // namespace maxmod
