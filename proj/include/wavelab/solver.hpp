#pragma once

#include <functional>
#include <memory>

#include "wavelab/euler.hpp"
#include "wavelab/grid.hpp"

namespace wavelab {

/// A 3-component quasilinear system v_t = A(v) v_x (paper convention) or
/// v_t + A(v) v_x = 0 (standard), together with a characteristic decomposition
/// of A. Built-in systems carry analytic eigen-structure; matrix-only systems
/// fall back to the generic 3x3 eigensolver.
class QuasilinearSystem {
 public:
  using MatrixFn = std::function<Mat3(const Vec3&)>;
  using DecompFn = std::function<EulerDecomposition(const Vec3&)>;

  static QuasilinearSystem full_euler(const GasParameters& g);
  static QuasilinearSystem reduced_kappa3(const GasParameters& g);
  /// Generic system from a matrix function only (numeric eigen-decomposition).
  static QuasilinearSystem from_matrix(MatrixFn m, GridKind kind,
                                       std::string name = "custom");

  Mat3 matrix(const Vec3& v) const { return matrix_(v); }
  EulerDecomposition decomposition(const Vec3& v) const { return decomp_(v); }
  GridKind state_kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  MatrixFn matrix_;
  DecompFn decomp_;
  GridKind kind_ = GridKind::euler_state;
  std::string name_;
};

/// One CIR (characteristic upwind) step; first order, zero-gradient boundaries.
/// Throws solver_halt on CFL violation, positivity loss, or a node where the
/// matrix cannot be diagonalized.
Grid1D step_quasilinear(const Grid1D& grid, const QuasilinearSystem& system, double dt,
                        Convention convention, double cfl_limit = 0.45);

/// Advection speed bound max_s |a_s| over all nodes (a_s = -lambda_s for the
/// paper convention, +lambda_s for standard; the bound is convention-free).
double spectral_radius(const Grid1D& grid, const QuasilinearSystem& system);

struct RunOptions {
  double cfl = 0.45;
  Convention convention = Convention::paper;
  int max_steps = 2000000;
  int frame_stride = 1;  // record every k-th frame (first and last always kept)
  double blowup_slope_limit = 1e6;  // invariant-gradient guard of the scalar solver
};

/// Integrate to time T with dt recomputed each step from the spectral radius.
TimeSeries run_quasilinear(const Grid1D& initial, const QuasilinearSystem& system, double T,
                           const RunOptions& opts = {});

/// The printed reduced sound system
///   r1_t + [sqrt(k)(r1 - r2 + 1) + u0] r1_x = 0
///   r2_t + [sqrt(k)(r1 - r2 - 1) + u0] r2_x = 0
/// by scalar upwinding; halts on gradient blow-up.
TimeSeries solve_reduced_sound(const Grid1D& initial, const GasParameters& g, double T,
                               const RunOptions& opts = {});

/// Reduced kappa=3 run in the t-variables alongside the full Euler run from
/// the mapped initial data, with the per-frame L1 difference after mapping.
struct ReducedComparison {
  TimeSeries reduced;       // t-variable frames
  TimeSeries full;          // euler frames
  std::vector<double> l1_mapped_difference;  // per common frame
};

ReducedComparison solve_reduced_kappa3(const Grid1D& initial_tvars, const GasParameters& g,
                                       double T, const RunOptions& opts = {});

/// Candidate exact solution sampled on (x, t).
using SpaceTimeCandidate = std::function<Vec3(double x, double t)>;

enum class SystemKind { full, reduced_sound, reduced_kappa3 };

/// Max residual of the governing equations over samples, derivatives by
/// central differences with step 1e-5.
double residual_check(const SpaceTimeCandidate& candidate, SystemKind system,
                      const GasParameters& g,
                      const std::vector<std::pair<double, double>>& samples,
                      Convention convention = Convention::paper, double fd_step = 1e-5);

}  // namespace wavelab
