#include "maxmod/rootfind.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace maxmod {

int PolyDD::degree() const {
  int n = static_cast<int>(c.size()) - 1;
  while (n > 0 && dd::abs(c[n]).hi == 0.0) --n;
  return n;
}

dd::Complex PolyDD::eval(dd::Complex z) const {
  dd::Complex acc = c.back();
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) acc = acc * z + c[j];
  return acc;
}

dd::Complex PolyDD::eval_derivative(dd::Complex z) const {
  int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return dd::Complex(0.0);
  dd::Complex acc = dd::scale(c[n], double(n));
  for (int j = n - 1; j >= 1; --j) acc = acc * z + dd::scale(c[j], double(j));
  return acc;
}

double PolyDD::max_abs() const {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x.to_std()));
  return m;
}

void PolyDD::scale_down(double s) {
  for (auto& x : c) x = dd::scale(x, 1.0 / s);
}

PolyDD mul(const PolyDD& a, const PolyDD& b) {
  PolyDD out;
  out.c.assign(a.c.size() + b.c.size() - 1, dd::Complex(0.0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

PolyDD add(const PolyDD& a, const PolyDD& b) {
  PolyDD out;
  out.c.assign(std::max(a.c.size(), b.c.size()), dd::Complex(0.0));
  for (size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

namespace detail {

std::vector<Complex> companion_roots(const ComplexPoly& pin) {
  ComplexPoly p = pin.trimmed(0.0);
  int n = p.degree();
  std::vector<Complex> out;
  if (n < 1) return out;
  if (n == 1) {
    out.push_back(-p.coeff(0) / p.coeff(1));
    return out;
  }
  if (n == 2) {
    // numerically stable quadratic: pick the sign that avoids cancellation
    Complex a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    Complex q = (std::real(std::conj(b) * sq) >= 0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    if (q == Complex(0)) {
      out = {Complex(0), Complex(0)};
    } else {
      out = {q / a, c / q};
    }
    return out;
  }
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(i) / p.leading();
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  if (es.info() != Eigen::Success) throw NonConvergence("companion eigensolver failed");
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

void newton_polish(const ComplexPoly& p, std::vector<Complex>& roots, int iters) {
  ComplexPoly dp = p.derivative();
  for (auto& r : roots) {
    for (int it = 0; it < iters; ++it) {
      Complex f = p(r), df = dp(r);
      if (df == Complex(0)) break;
      Complex step = f / df;
      if (!std::isfinite(std::abs(step))) break;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;  // diverging; keep eigenvalue
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
  }
}

}  // namespace detail

std::vector<Complex> raw_roots(const ComplexPoly& pin) {
  ComplexPoly p = pin.trimmed(0.0);
  auto rs = detail::companion_roots(p);
  detail::newton_polish(p, rs);
  sort_canonical(rs);
  return rs;
}

RootSet roots(const ComplexPoly& pin, double tol) {
  ComplexPoly p = pin.trimmed(0.0);
  if (p.degree() < 1) throw InvalidSpec("roots: degree must be >= 1");
  if (std::abs(p.leading()) <= tol * std::max(1.0, p.norm_inf()))
    throw InvalidSpec("roots: leading coefficient below tolerance");
  auto rs = detail::companion_roots(p);
  detail::newton_polish(p, rs);

  // residual relative to evaluation scale
  double resid = 0.0;
  for (Complex r : rs) resid = std::max(resid, std::abs(p(r)) / std::max(p.eval_scale(r), 1e-300));
  if (resid > 1e-7)
    throw NonConvergence("root residual " + std::to_string(resid) + " above target");

  // multiplicity clustering: a candidate m-cluster may span tol^(1/m)
  std::vector<std::vector<Complex>> clusters;
  for (Complex r : rs) clusters.push_back({r});
  auto mean_of = [](const std::vector<Complex>& v) {
    Complex s = 0;
    for (Complex x : v) s += x;
    return s / double(v.size());
  };
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < clusters.size() && !merged; ++i) {
      for (size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        Complex mi = mean_of(clusters[i]), mj = mean_of(clusters[j]);
        int m = static_cast<int>(clusters[i].size() + clusters[j].size());
        double radius = std::pow(tol, 1.0 / m) * (1.0 + std::abs(mi));
        if (std::abs(mi - mj) <= radius) {
          clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
          clusters.erase(clusters.begin() + j);
          merged = true;
        }
      }
    }
  }

  RootSet out;
  out.residual = resid;
  for (auto& cl : clusters)
    out.roots.push_back({mean_of(cl), static_cast<int>(cl.size())});
  auto arg2pi = [](Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2 * std::numbers::pi;
    return a;
  };
  std::sort(out.roots.begin(), out.roots.end(), [&](const auto& x, const auto& y) {
    double mx = std::abs(x.value), my = std::abs(y.value);
    if (mx != my) return mx > my;
    return arg2pi(x.value) < arg2pi(y.value);
  });
  return out;
}

std::vector<Complex> aberth_roots(const PolyDD& pin, std::vector<Complex> seeds, int max_sweeps) {
  PolyDD p = pin;
  int n = p.degree();
  p.c.resize(n + 1);
  if (n < 1) return {};

  if (seeds.empty()) seeds = detail::companion_roots(p.to_double());
  if (static_cast<int>(seeds.size()) != n) {
    seeds.resize(n);
  }
  // split coincident seeds; Aberth needs pairwise-distinct iterates
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(0.0, 2 * std::numbers::pi);
  for (size_t i = 0; i < seeds.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (std::abs(seeds[i] - seeds[j]) < 1e-12 * (1.0 + std::abs(seeds[i])))
        seeds[i] += std::polar(1e-6 * (1.0 + std::abs(seeds[i])), unif(rng));

  std::vector<dd::Complex> z(seeds.begin(), seeds.end());
  std::vector<bool> done(n, false);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      dd::Complex f = p.eval(z[i]);
      dd::Complex df = p.eval_derivative(z[i]);
      double fd = std::abs(f.to_std());
      double scale = p.to_double().eval_scale(z[i].to_std());
      if (fd <= 1e-28 * std::max(scale, 1e-300)) {
        done[i] = true;
        continue;
      }
      all_done = false;
      if (std::abs(df.to_std()) == 0.0) {
        z[i] += dd::Complex(std::polar(1e-8 * (1.0 + std::abs(z[i].to_std())), unif(rng)));
        continue;
      }
      dd::Complex ratio = f / df;
      dd::Complex sum(0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) sum += dd::Complex(1.0) / (z[i] - z[j]);
      dd::Complex denom = dd::Complex(1.0) - ratio * sum;
      dd::Complex step = (std::abs(denom.to_std()) > 0) ? ratio / denom : ratio;
      double slen = std::abs(step.to_std());
      if (!std::isfinite(slen) || slen > 4.0 * (1.0 + std::abs(z[i].to_std()))) {
        z[i] += dd::Complex(std::polar(0.1 * (1.0 + std::abs(z[i].to_std())), unif(rng)));
        continue;
      }
      z[i] = z[i] - step;
      if (slen < 1e-30 * (1.0 + std::abs(z[i].to_std()))) done[i] = true;
    }
    if (all_done) break;
  }
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = z[i].to_std();
  sort_canonical(out);
  return out;
}

}  // namespace maxmod
