#include "maxmod/perron.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <thread>

namespace maxmod {

CMat MatrixFamily::generated(int n, const Param& x) const {
  CMat t = gen(n, x);
  double d = std::abs(Eigen::PartialPivLU<CMat>(t).determinant());
  double scale = std::pow(std::max(t.norm(), 1e-300), k);
  if (d <= invert_tol * scale)
    throw SingularStep("generated matrix at n=" + std::to_string(n) + " fails invertibility");
  return t;
}

ProjectivePoint ProjectivePoint::of(CVec raw) {
  double n = raw.norm();
  if (n == 0.0) throw InvalidSpec("projective point needs a nonzero representative");
  raw /= n;
  double mx = raw.cwiseAbs().maxCoeff();
  Eigen::Index first = 0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    if (std::abs(raw[i]) > 1e-8 * mx) {
      first = i;
      break;
    }
  }
  Complex ph = raw[first] / std::abs(raw[first]);
  raw *= std::conj(ph);
  return ProjectivePoint{std::move(raw)};
}

double fubini_study_dist(const ProjectivePoint& a, const ProjectivePoint& b) {
  double ip = std::abs(a.v.dot(b.v)) / (a.v.norm() * b.v.norm());
  ip = std::clamp(ip, 0.0, 1.0);
  return std::acos(ip);
}

SpectralGap spectral_gap(const CMat& t, double rel_tol) {
  Eigen::ComplexEigenSolver<CMat> es(t, true);
  if (es.info() != Eigen::Success) throw NonConvergence("eigensolver failed");
  const auto& ev = es.eigenvalues();
  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i]) > std::abs(ev[imax])) imax = i;
  double top = std::abs(ev[imax]);
  if (top == 0.0) throw NoSpectralGap("limit matrix is nilpotent");
  double second = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (i == imax) continue;
    second = std::max(second, std::abs(ev[i]));
    if (std::abs(std::abs(ev[i]) - top) <= rel_tol * top)
      throw NoSpectralGap("max-modulus eigenvalue is not unique");
  }

  SpectralGap out;
  out.lambda_max = ev[imax];
  out.gap = second / top;
  out.right = es.eigenvectors().col(imax);

  Eigen::ComplexEigenSolver<CMat> est(t.transpose(), true);
  if (est.info() != Eigen::Success) throw NonConvergence("transpose eigensolver failed");
  Eigen::Index jmax = 0;
  for (Eigen::Index i = 1; i < est.eigenvalues().size(); ++i)
    if (std::abs(est.eigenvalues()[i] - out.lambda_max) <
        std::abs(est.eigenvalues()[jmax] - out.lambda_max))
      jmax = i;
  out.left = est.eigenvectors().col(jmax);
  Complex bi = out.left.transpose() * out.right;  // bilinear, not Hermitian
  if (std::abs(bi) < 1e-12) throw IllConditioned("left/right eigenvectors nearly orthogonal");
  out.left /= bi;
  return out;
}

GrowthLine product_line(const MatrixFamily& fam, const Param& x, const CVec& x0, int n) {
  if (x0.norm() == 0.0) throw InvalidSpec("product_line: x0 must be nonzero");
  CVec y = x0 / x0.norm();
  double logm = 0.0;
  for (int i = 1; i <= n; ++i) {
    y = fam.generated(i, x) * y;
    double ny = y.norm();
    if (ny == 0.0) throw SingularStep("product annihilated the iterate");
    y /= ny;
    logm += std::log(ny);
  }
  GrowthLine out;
  out.line = ProjectivePoint::of(y);
  out.log_growth = logm;
  out.growth_rate = n > 0 ? logm / n : 0.0;
  return out;
}

namespace {

int adaptive_block_size(const CMat& t_scaled, const SpectralGap& sg, double eps) {
  CMat rank1 = sg.right * sg.left.transpose();  // lambda rescaled to 1
  CMat power = t_scaled;
  int m = 1;
  while (m < 4096) {
    if ((power - rank1).norm() < eps / 2) return m;
    power = power * power;  // doubling
    m *= 2;
  }
  return m;
}

}  // namespace

ConvergenceReport estimate_w(const MatrixFamily& fam, const Param& x, const Param& anchor,
                             const WOptions& opts) {
  SpectralGap sg_anchor = spectral_gap(fam.limit(anchor));
  SpectralGap sg_x = spectral_gap(fam.limit(x));
  Complex lam = sg_x.lambda_max;

  CMat t_scaled = fam.limit(anchor) / sg_anchor.lambda_max;
  int m = adaptive_block_size(t_scaled, sg_anchor, 0.25);

  ConvergenceReport rep;
  const CVec v0 = sg_anchor.left;  // v(x0)
  // blocks multiply on the inside, adjacent to v, so keep the whole product
  CMat prod = CMat::Identity(fam.k, fam.k);
  ProjectivePoint prev = ProjectivePoint::of(v0);
  int idx = opts.burn_in;
  double prev_step = 0.0;
  const double lam_abs = std::abs(lam);
  for (int l = 1; l <= opts.l_budget; ++l) {
    CMat block = CMat::Identity(fam.k, fam.k);
    for (int j = 0; j < m; ++j) {
      ++idx;
      block = block * fam.generated(idx, x).transpose() / lam_abs;
    }
    prod = prod * block;
    double pn = prod.norm();
    if (pn == 0.0) throw SingularStep("w estimate annihilated");
    prod /= pn;
    CVec y = prod * v0;
    if (y.norm() == 0.0) throw SingularStep("w estimate annihilated");
    ProjectivePoint curp = ProjectivePoint::of(y);
    double step = fubini_study_dist(curp, prev);
    rep.block_steps.push_back(step);
    rep.contraction_estimate = prev_step > 0 ? step / prev_step : 1.0;
    rep.n_used = idx;
    rep.final_distance_step = step;
    prev = curp;
    prev_step = step;
    if (step < opts.tol && l >= 3) {
      rep.certified = rep.contraction_estimate < 1.0;
      break;
    }
  }
  rep.limit_point = prev;
  return rep;
}

CMat normalized_product_limit(const MatrixFamily& fam, const Param& x, int n) {
  spectral_gap(fam.limit(x));  // gap precondition
  CMat k_hat = CMat::Identity(fam.k, fam.k);
  for (int i = 1; i <= n; ++i) {
    k_hat = fam.generated(i, x) * k_hat;
    double m = k_hat.cwiseAbs().maxCoeff();
    if (m == 0.0) throw SingularStep("partial product vanished");
    k_hat /= m;  // scale cancels in K_n / lambda_max(K_n)
  }
  Eigen::ComplexEigenSolver<CMat> es(k_hat, false);
  if (es.info() != Eigen::Success) throw NonConvergence("product eigensolver failed");
  const auto& ev = es.eigenvalues();
  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i]) > std::abs(ev[imax])) imax = i;
  if (std::abs(ev[imax]) == 0.0) throw NoSpectralGap("partial product has no dominant eigenvalue");
  return k_hat / ev[imax];
}

double rank_one_defect(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() < 2 || s[0] == 0.0) return 0.0;
  return s[1] / s[0];
}

SweepResult parametric_sweep(const MatrixFamily& fam, const std::vector<Param>& grid,
                             const CVec& x0, const SweepOptions& opts) {
  SweepResult out;
  out.entries.resize(grid.size());
  int jobs = opts.jobs > 0 ? opts.jobs : int(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, int(grid.size())));

  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      SweepEntry& e = out.entries[i];
      e.x = grid[i];
      try {
        spectral_gap(fam.limit(grid[i]));
        GrowthLine gl = product_line(fam, grid[i], x0, opts.n_product);
        ConvergenceReport rep = estimate_w(fam, grid[i], grid[i], opts.w_opts);
        e.u_max = gl.line;
        e.growth_rate = gl.growth_rate;
        e.w = rep.limit_point;
        e.n_used = rep.n_used;
        e.certified = rep.certified;
        e.ok = true;
      } catch (const Error& err) {
        e.ok = false;
        e.error = err.kind();
      }
    }
  };
  if (jobs == 1) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (grid.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      size_t b = t * chunk, e = std::min(grid.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  double proxy = 0.0;
  for (size_t i = 0; i + 1 < out.entries.size(); ++i)
    if (out.entries[i].ok && out.entries[i + 1].ok)
      proxy = std::max(proxy, fubini_study_dist(out.entries[i].w, out.entries[i + 1].w));
  out.adjacency_proxy = proxy;
  return out;
}

MatrixFamily companion_family(const RecurrenceSpec& spec) {
  spec.validate();
  MatrixFamily fam;
  fam.k = spec.k;
  auto build = [spec](const std::vector<Complex>& alpha) {
    int k = spec.k;
    CMat t = CMat::Zero(k, k);
    for (int i = 0; i < k; ++i) t(0, i) = -alpha[i];
    for (int i = 1; i < k; ++i) t(i, i - 1) = 1.0;
    return t;
  };
  fam.gen = [spec, build](int n, const Param& x) {
    Complex z(x[0], x.size() > 1 ? x[1] : 0.0);
    std::vector<Complex> alpha(spec.k);
    for (int i = 1; i <= spec.k; ++i) alpha[i - 1] = spec.coeffs[i - 1].at(n)(z);
    return build(alpha);
  };
  fam.limit = [spec, build](const Param& x) {
    Complex z(x[0], x.size() > 1 ? x[1] : 0.0);
    std::vector<Complex> alpha(spec.k);
    for (int i = 1; i <= spec.k; ++i) alpha[i - 1] = spec.coeffs[i - 1].limit(z);
    return build(alpha);
  };
  return fam;
}

}  // namespace maxmod
