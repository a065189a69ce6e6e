#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxmod/cpoly.hpp"
#include "maxmod/recurrence.hpp"

namespace maxmod {

using Param = Eigen::VectorXd;

/// Sequence of parameter-dependent regular matrices with a declared limit.
/// Generators must be stateless in n so sweeps can re-run them per point.
struct MatrixFamily {
  int k = 0;
  std::function<CMat(int n, const Param&)> gen;  // n >= 1
  std::function<CMat(const Param&)> limit;
  double invert_tol = 1e-13;

  CMat generated(int n, const Param& x) const;  // checks invertibility
};

/// Point of P^{k-1}: unit 2-norm representative with the first significant
/// entry rotated real-positive, so equal lines normalize identically.
struct ProjectivePoint {
  CVec v;

  static ProjectivePoint of(CVec raw);
};

/// arccos(|<a,b>| / (|a||b|)), values in [0, pi/2].
double fubini_study_dist(const ProjectivePoint& a, const ProjectivePoint& b);

struct GrowthLine {
  ProjectivePoint line;
  double log_growth = 0.0;   // log ||T_n...T_1 x0|| (total)
  double growth_rate = 0.0;  // log_growth / n, the Lyapunov-style exponent
};

/// Line of T_n(x)...T_1(x) x0 with per-step renormalization.
GrowthLine product_line(const MatrixFamily& fam, const Param& x, const CVec& x0, int n);

struct ConvergenceReport {
  int n_used = 0;
  double final_distance_step = 0.0;
  double contraction_estimate = 0.0;
  ProjectivePoint limit_point;
  bool certified = false;
  std::vector<double> block_steps;  // Fubini-Study distance per block step
};

struct WOptions {
  int l_budget = 200;
  double tol = 1e-10;
  int burn_in = 0;  // index offset N before the first block
};

/// Slow-growth covector line w(x): blocks of transposed generated matrices
/// applied to the left eigenvector of the limit at the anchor.  The block
/// size doubles until the limit power is within eps/2 of its rank-one limit.
ConvergenceReport estimate_w(const MatrixFamily& fam, const Param& x, const Param& anchor,
                             const WOptions& opts = {});

/// K_n / lambda_max(K_n); converges to a rank-one matrix under the spectral
/// gap hypothesis.  sigma2/sigma1 of the result measures rank-one-ness.
CMat normalized_product_limit(const MatrixFamily& fam, const Param& x, int n);

double rank_one_defect(const CMat& m);  // sigma2 / sigma1

struct SweepEntry {
  Param x;
  bool ok = false;
  std::string error;
  ProjectivePoint u_max;
  ProjectivePoint w;
  double growth_rate = 0.0;
  int n_used = 0;
  bool certified = false;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  double adjacency_proxy = 0.0;  // max FS distance of w between adjacent ok points
};

struct SweepOptions {
  int n_product = 300;
  WOptions w_opts{};
  double tol = 1e-10;
  int jobs = 0;  // 0 = hardware concurrency
};

/// Per-point limits over a parameter list; adjacency is consecutive order in
/// `grid`.  Per-point failures are recorded and the sweep continues.
SweepResult parametric_sweep(const MatrixFamily& fam, const std::vector<Param>& grid,
                             const CVec& x0, const SweepOptions& opts = {});

/// Companion family of a recurrence; parameter is (Re z, Im z).
MatrixFamily companion_family(const RecurrenceSpec& spec);

/// Unique simple max-modulus eigenvalue test; returns it or throws
/// NoSpectralGap.  Also exposed for grid preflight checks.
struct SpectralGap {
  Complex lambda_max;
  CVec right;  // eigenvector for lambda_max
  CVec left;   // left eigenvector, normalized so left^T right = 1
  double gap;  // |lambda_2| / |lambda_max|
};
SpectralGap spectral_gap(const CMat& t, double rel_tol = 1e-9);

}  // namespace maxmod
