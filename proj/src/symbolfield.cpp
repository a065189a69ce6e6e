#include "maxmod/symbolfield.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace maxmod {

namespace {

void run_parallel(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (count + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    int b = t * chunk, e = std::min(count, b + chunk);
    if (b < e)
      pool.emplace_back([&fn, b, e] {
        for (int i = b; i < e; ++i) fn(i);
      });
  }
  for (auto& th : pool) th.join();
}

// top-two moduli of the symbol's roots at z
std::pair<Complex, double> leading_and_marker(const SymbolEquation& sym, Complex z) {
  std::vector<Complex> rs = raw_roots(sym.at(z));
  // raw_roots sorts descending modulus
  double top = std::abs(rs[0]);
  double second = rs.size() > 1 ? std::abs(rs[1]) : 0.0;
  return {rs[0], top > 0 ? second / top : 1.0};
}

}  // namespace

PsiValue psi_max(const SymbolEquation& sym, Complex z, double rel_tol) {
  sym.validate();
  ComplexPoly pk = sym.phi.back();
  double scale = std::max(1.0, pk.norm_inf());
  if (std::abs(pk(z)) <= 1e-13 * scale)
    throw DegenerateLeading("phi_k vanishes at the evaluation point");
  auto [lead, marker] = leading_and_marker(sym, z);
  PsiValue out;
  out.marker = marker;
  if (marker >= 1.0 - rel_tol) {
    out.nongeneric = true;
  } else {
    out.psi = lead;
  }
  return out;
}

GridField marker_grid(const SymbolEquation& sym, const GridSpec& grid, double rel_tol, int jobs) {
  sym.validate();
  GridField field;
  field.grid = grid;
  field.cells.resize(size_t(grid.nre) * grid.nim);
  const ComplexPoly& pk = sym.phi.back();
  double scale = std::max(1.0, pk.norm_inf());
  run_parallel(grid.nre, jobs, [&](int i) {
    for (int j = 0; j < grid.nim; ++j) {
      Complex z = grid.at(i, j);
      GridField::Cell& cell = field.cells[size_t(i) * grid.nim + j];
      if (std::abs(pk(z)) <= 1e-13 * scale) {
        cell.degenerate = true;
        cell.marker = 1.0;
        cell.nongeneric = true;
        continue;
      }
      auto [lead, marker] = leading_and_marker(sym, z);
      cell.marker = marker;
      cell.nongeneric = marker >= 1.0 - rel_tol;
      if (!cell.nongeneric) cell.psi = lead;
    }
  });
  return field;
}

std::vector<Complex> marker_ridge_points(const GridField& field, double floor) {
  std::vector<Complex> out;
  const GridSpec& g = field.grid;
  for (int i = 1; i + 1 < g.nre; ++i) {
    for (int j = 1; j + 1 < g.nim; ++j) {
      double v = field.at(i, j).marker;
      if (v < floor) continue;
      bool row_max = v >= field.at(i - 1, j).marker && v >= field.at(i + 1, j).marker;
      bool col_max = v >= field.at(i, j - 1).marker && v >= field.at(i, j + 1).marker;
      if (row_max || col_max) out.push_back(g.at(i, j));
    }
  }
  return out;
}

DiscriminantCurve trace_discriminant_eps(const SymbolEquation& sym,
                                         const std::vector<double>& eps_values, double rel_tol) {
  sym.validate();
  if (sym.k != 2) throw InvalidSpec("eps parametrization exists for k = 2 only");
  ComplexPoly q1 = sym.q1(), q2 = sym.q2();

  DiscriminantCurve curve;
  auto verified_push = [&](Complex z, double eps, bool inf_slice) {
    auto [lead, marker] = leading_and_marker(sym, z);
    (void)lead;
    if (marker < 1.0 - 10 * rel_tol) return;  // verification pass
    curve.points.push_back({z, eps, inf_slice, marker});
  };

  for (double eps : eps_values) {
    ComplexPoly f = (Complex(eps) * (q1 * q1) + Complex(4) * q2).trimmed(1e-14);
    if (f.degree() < 1) continue;  // empty slice
    for (Complex z : raw_roots(f)) verified_push(z, eps, false);
  }
  ComplexPoly q1t = q1.trimmed(1e-14);
  if (q1t.degree() >= 1)
    for (Complex z : raw_roots(q1t)) verified_push(z, 0.0, true);

  // nearest-neighbour chaining in eps order, split at jumps > 5x median gap
  std::vector<int> order(curve.points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::vector<char> used(curve.points.size(), 0);
  std::vector<double> gaps;
  while (true) {
    int start = -1;
    for (size_t i = 0; i < used.size(); ++i)
      if (!used[i]) {
        start = int(i);
        break;
      }
    if (start < 0) break;
    std::vector<int> chain{start};
    used[start] = 1;
    while (true) {
      const Complex cur = curve.points[chain.back()].z;
      int best = -1;
      double bd = 0;
      for (size_t i = 0; i < used.size(); ++i) {
        if (used[i]) continue;
        double d = std::abs(curve.points[i].z - cur);
        if (best < 0 || d < bd) {
          best = int(i);
          bd = d;
        }
      }
      if (best < 0) break;
      if (!gaps.empty()) {
        std::vector<double> s = gaps;
        std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
        double median = s[s.size() / 2];
        if (bd > 5.0 * std::max(median, 1e-12)) break;
      }
      used[best] = 1;
      chain.push_back(best);
      gaps.push_back(bd);
    }
    curve.polylines.push_back(std::move(chain));
  }
  return curve;
}

std::vector<Complex> branch_points(const SymbolEquation& sym) {
  sym.validate();
  if (sym.k < 2) throw InvalidSpec("branch points need k >= 2");
  int dmax = 0;
  for (const auto& p : sym.phi) dmax = std::max(dmax, p.degree());
  int bound = (2 * sym.k - 1) * std::max(dmax, 1);

  ComplexPoly disc = resultant_in_u(bound, [&](Complex z) {
    ComplexPoly s = sym.at(z);
    return sylvester_resultant(s, s.derivative()).value;
  });
  double scale = disc.norm_inf();
  if (scale <= 1e-12) throw IdenticallyZero("discriminant vanishes identically");
  disc = disc.trimmed(1e-10 * scale);
  if (disc.degree() < 1) throw IdenticallyZero("discriminant is constant");
  auto zs = raw_roots(disc);
  sort_canonical(zs);
  return zs;
}

std::vector<RatioCell> ratio_field(const RecurrenceSpec& spec,
                                   const std::vector<ComplexPoly>& initial, const GridSpec& grid,
                                   int n, const RatioFieldOptions& opts) {
  spec.validate();
  SymbolEquation sym = SymbolEquation::limit_of(spec);
  std::vector<RatioCell> cells(size_t(grid.nre) * grid.nim);
  run_parallel(grid.nre, opts.jobs, [&](int i) {
    for (int j = 0; j < grid.nim; ++j) {
      Complex z = grid.at(i, j);
      RatioCell& cell = cells[size_t(i) * grid.nim + j];
      std::vector<Complex> init(spec.k);
      for (int t = 0; t < spec.k; ++t) init[t] = initial[t](z);
      try {
        IterateOptions io;
        io.normalized = true;
        IterateResult res = iterate(spec, z, init, n, io);
        size_t m = res.ratios.size();
        if (m < 4) continue;
        Complex r = res.ratios[m - 1];
        cell.ratio = r;
        double drift = 0.0;
        for (size_t t = m - 3; t < m; ++t) drift = std::max(drift, std::abs(res.ratios[t] - res.ratios[t - 1]));
        cell.converged = drift < opts.tol * (1.0 + std::abs(r));
        try {
          PsiValue pv = psi_max(sym, z, opts.rel_tol);
          if (!pv.nongeneric) {
            cell.has_psi = true;
            cell.deviation = std::abs(r - pv.psi);
          }
        } catch (const DegenerateLeading&) {
        }
      } catch (const CoefficientVanished&) {
        cell.coeff_vanished = true;
      }
    }
  });
  return cells;
}

SigmaISet detect_sigma_I(const std::map<int, std::vector<Complex>>& levels,
                         const std::vector<Complex>& curve_points, double isolation_radius,
                         double match_radius) {
  if (levels.size() < 3) throw InvalidSpec("detect_sigma_I needs at least 3 n-levels");
  auto isolated = [&](Complex z) {
    for (Complex c : curve_points)
      if (std::abs(z - c) <= isolation_radius) return false;
    return true;
  };
  auto found_in = [&](Complex z, const std::vector<Complex>& zs) {
    for (Complex w : zs)
      if (std::abs(z - w) < match_radius) return true;
    return false;
  };

  std::vector<const std::vector<Complex>*> seq;
  for (const auto& [n, zs] : levels) seq.push_back(&zs);

  SigmaISet out;
  const auto& last = *seq.back();
  for (Complex z : last) {
    if (!isolated(z)) continue;
    // consecutive run of levels (ending at the last) containing the point
    int run = 0;
    for (int i = int(seq.size()) - 1; i >= 0; --i) {
      if (found_in(z, *seq[i]))
        ++run;
      else
        break;
    }
    if (run >= 3) {
      bool dup = false;
      for (const auto& p : out.points)
        if (std::abs(p.z - z) < match_radius) dup = true;
      if (!dup) out.points.push_back({z, run});
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

std::map<int, std::vector<Complex>> zero_levels(const RecurrenceSpec& spec,
                                                const std::vector<ComplexPoly>& initial,
                                                const std::vector<int>& requested) {
  auto orbit = polynomial_orbit(spec, initial, requested);
  std::map<int, std::vector<Complex>> out;
  for (auto& [n, poly] : orbit) {
    PolyDD p = poly;
    // trim trailing dd-noise coefficients relative to the largest
    double m = p.max_abs();
    int deg = int(p.c.size()) - 1;
    while (deg > 0 && std::abs(p.c[deg].to_std()) < 1e-28 * m) --deg;
    p.c.resize(deg + 1);
    out[n] = aberth_roots(p);
  }
  return out;
}

}  // namespace maxmod
