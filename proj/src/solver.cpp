#include "wavelab/solver.hpp"

#include <cmath>

#include "wavelab/geometry.hpp"

namespace wavelab {

QuasilinearSystem QuasilinearSystem::full_euler(const GasParameters& g) {
  QuasilinearSystem s;
  s.name_ = "full_euler";
  s.kind_ = GridKind::euler_state;
  s.matrix_ = [g](const Vec3& v) { return euler_matrix(StateVector::from_vec(v), g); };
  s.decomp_ = [g](const Vec3& v) { return euler_decomposition(v, g); };
  return s;
}

QuasilinearSystem QuasilinearSystem::reduced_kappa3(const GasParameters& g) {
  QuasilinearSystem s;
  s.name_ = "reduced_kappa3";
  s.kind_ = GridKind::tvars;
  s.matrix_ = [g](const Vec3& t) {
    const StateVector v = region_map(t[0], t[1], t[2]);
    return reduced_matrix(v, g);
  };
  s.decomp_ = [g](const Vec3& t) {
    const StateVector v = region_map(t[0], t[1], t[2]);
    return reduced_decomposition(t, g, v.vec());
  };
  return s;
}

QuasilinearSystem QuasilinearSystem::from_matrix(MatrixFn m, GridKind kind, std::string name) {
  QuasilinearSystem s;
  s.name_ = std::move(name);
  s.kind_ = kind;
  s.matrix_ = m;
  s.decomp_ = [m](const Vec3& v) {
    Eigen3 e;
    try {
      e = eigen_decompose(m(v));
    } catch (const std::domain_error& err) {
      throw solver_halt(solver_halt::Reason::non_diagonalizable, err.what());
    }
    EulerDecomposition d;
    d.lambda = e.lambda;
    d.right = e.right;
    d.left = e.left;
    return d;
  };
  return s;
}

double spectral_radius(const Grid1D& grid, const QuasilinearSystem& system) {
  double rad = 0.0;
  for (int i = 0; i < grid.nx(); ++i) {
    const auto dec = system.decomposition(grid.node3(i));
    for (double l : dec.lambda) rad = std::max(rad, std::abs(l));
  }
  return rad;
}

Grid1D step_quasilinear(const Grid1D& grid, const QuasilinearSystem& system, double dt,
                        Convention convention, double cfl_limit) {
  const int nx = grid.nx();
  const double dx = grid.dx();
  // advection speed of each characteristic variable: -lambda for the paper
  // convention (v_t = A v_x), +lambda for the standard one
  const double sgn = convention == Convention::paper ? -1.0 : 1.0;

  Grid1D next = grid;
  double max_nu = 0.0;
  for (int i = 0; i < nx; ++i) {
    const Vec3 v = grid.node3(i);
    const auto dec = system.decomposition(v);
    const Vec3 vm = grid.node3(i > 0 ? i - 1 : i);        // zero-gradient ghosts
    const Vec3 vp = grid.node3(i < nx - 1 ? i + 1 : i);
    Vec3 update{};
    for (int s = 0; s < 3; ++s) {
      const double a = sgn * dec.lambda[s];
      max_nu = std::max(max_nu, std::abs(a) * dt / dx);
      const Vec3 diff = a > 0.0 ? v - vm : vp - v;
      const double dalpha = dot(dec.left[s], diff);
      update += (a * dalpha) * dec.right[s];
    }
    next.set_node3(i, v - (dt / dx) * update);
  }
  if (max_nu > cfl_limit + 1e-9)
    throw solver_halt(solver_halt::Reason::cfl_violation,
                      "CFL number " + std::to_string(max_nu) + " exceeds limit " +
                          std::to_string(cfl_limit));
  next.check_positivity();
  return next;
}

TimeSeries run_quasilinear(const Grid1D& initial, const QuasilinearSystem& system, double T,
                           const RunOptions& opts) {
  TimeSeries out;
  out.times.push_back(0.0);
  out.frames.push_back(initial);
  initial.check_positivity();

  Grid1D current = initial;
  double t = 0.0;
  int steps = 0;
  while (t < T - 1e-14 * std::max(1.0, T)) {
    if (++steps > opts.max_steps)
      throw std::runtime_error("run_quasilinear: max step count exceeded");
    const double rad = spectral_radius(current, system);
    double dt = rad > 1e-14 ? opts.cfl * current.dx() / rad : (T - t);
    dt = std::min(dt, T - t);
    current = step_quasilinear(current, system, dt, opts.convention, opts.cfl + 1e-12);
    t += dt;
    out.cfl_history.push_back(rad > 1e-14 ? dt * rad / current.dx() : 0.0);
    const bool last = !(t < T - 1e-14 * std::max(1.0, T));
    if (last || steps % opts.frame_stride == 0) {
      out.times.push_back(t);
      out.frames.push_back(current);
    }
  }
  return out;
}

TimeSeries solve_reduced_sound(const Grid1D& initial, const GasParameters& g, double T,
                               const RunOptions& opts) {
  if (initial.ncomp() != 2)
    throw std::invalid_argument("solve_reduced_sound: grid must carry (r1, r2)");
  const double sk = std::sqrt(g.kappa);
  const int nx = initial.nx();
  const double dx = initial.dx();

  TimeSeries out;
  out.times.push_back(0.0);
  out.frames.push_back(initial);

  Grid1D cur = initial;
  double t = 0.0;
  int steps = 0;
  while (t < T - 1e-14 * std::max(1.0, T)) {
    if (++steps > opts.max_steps)
      throw std::runtime_error("solve_reduced_sound: max step count exceeded");
    double rad = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double r1 = cur.at(i, 0), r2 = cur.at(i, 1);
      rad = std::max(rad, std::abs(sk * (r1 - r2 + 1.0) + g.u0));
      rad = std::max(rad, std::abs(sk * (r1 - r2 - 1.0) + g.u0));
    }
    double dt = rad > 1e-14 ? opts.cfl * dx / rad : (T - t);
    dt = std::min(dt, T - t);

    Grid1D next = cur;
    double max_slope = 0.0;
    for (int i = 0; i < nx; ++i) {
      const int im = i > 0 ? i - 1 : i, ip = i < nx - 1 ? i + 1 : i;
      const double r1 = cur.at(i, 0), r2 = cur.at(i, 1);
      const double v1 = sk * (r1 - r2 + 1.0) + g.u0;
      const double v2 = sk * (r1 - r2 - 1.0) + g.u0;
      const double d1 = v1 > 0.0 ? r1 - cur.at(im, 0) : cur.at(ip, 0) - r1;
      const double d2 = v2 > 0.0 ? r2 - cur.at(im, 1) : cur.at(ip, 1) - r2;
      next.at(i, 0) = r1 - dt / dx * v1 * d1;
      next.at(i, 1) = r2 - dt / dx * v2 * d2;
      max_slope = std::max({max_slope, std::abs(cur.at(ip, 0) - cur.at(im, 0)) / (2.0 * dx),
                            std::abs(cur.at(ip, 1) - cur.at(im, 1)) / (2.0 * dx)});
    }
    if (max_slope > opts.blowup_slope_limit)
      throw solver_halt(solver_halt::Reason::gradient_blowup,
                        "invariant gradient exceeded " +
                            std::to_string(opts.blowup_slope_limit) +
                            "; steepening blow-up at t = " + std::to_string(t));
    cur = next;
    t += dt;
    out.cfl_history.push_back(rad > 1e-14 ? dt * rad / dx : 0.0);
    const bool last = !(t < T - 1e-14 * std::max(1.0, T));
    if (last || steps % opts.frame_stride == 0) {
      out.times.push_back(t);
      out.frames.push_back(cur);
    }
  }
  return out;
}

ReducedComparison solve_reduced_kappa3(const Grid1D& initial_tvars, const GasParameters& g,
                                       double T, const RunOptions& opts) {
  if (std::abs(g.kappa - 3.0) > 1e-12)
    throw std::invalid_argument("solve_reduced_kappa3 requires kappa = 3");
  if (initial_tvars.kind() != GridKind::tvars || initial_tvars.ncomp() != 3)
    throw std::invalid_argument("solve_reduced_kappa3: grid must carry (t1, t2, t3)");

  const auto reduced = QuasilinearSystem::reduced_kappa3(g);
  const auto full = QuasilinearSystem::full_euler(g);

  Grid1D tg = initial_tvars;
  Grid1D vg(initial_tvars.x0(), initial_tvars.x1(), initial_tvars.nx(), 3,
            GridKind::euler_state);
  for (int i = 0; i < tg.nx(); ++i) {
    const Vec3 t = tg.node3(i);
    vg.set_node3(i, region_map(t[0], t[1], t[2]).vec());
  }

  ReducedComparison cmp;
  auto record = [&cmp](double t, const Grid1D& tgrid, const Grid1D& vgrid) {
    cmp.reduced.times.push_back(t);
    cmp.reduced.frames.push_back(tgrid);
    cmp.full.times.push_back(t);
    cmp.full.frames.push_back(vgrid);
    double l1 = 0.0;
    for (int i = 0; i < tgrid.nx(); ++i) {
      const Vec3 tv = tgrid.node3(i);
      const Vec3 mapped = region_map(tv[0], tv[1], tv[2]).vec();
      const Vec3 diff = mapped - vgrid.node3(i);
      l1 += (std::abs(diff[0]) + std::abs(diff[1]) + std::abs(diff[2])) * tgrid.dx();
    }
    cmp.l1_mapped_difference.push_back(l1);
  };
  record(0.0, tg, vg);

  double t = 0.0;
  int steps = 0;
  while (t < T - 1e-14 * std::max(1.0, T)) {
    if (++steps > opts.max_steps)
      throw std::runtime_error("solve_reduced_kappa3: max step count exceeded");
    const double rad = std::max(spectral_radius(tg, reduced), spectral_radius(vg, full));
    double dt = rad > 1e-14 ? opts.cfl * tg.dx() / rad : (T - t);
    dt = std::min(dt, T - t);
    tg = step_quasilinear(tg, reduced, dt, opts.convention, opts.cfl + 1e-12);
    vg = step_quasilinear(vg, full, dt, opts.convention, opts.cfl + 1e-12);
    t += dt;
    cmp.reduced.cfl_history.push_back(dt * rad / tg.dx());
    cmp.full.cfl_history.push_back(dt * rad / tg.dx());
    const bool last = !(t < T - 1e-14 * std::max(1.0, T));
    if (last || steps % opts.frame_stride == 0) record(t, tg, vg);
  }
  return cmp;
}

double residual_check(const SpaceTimeCandidate& candidate, SystemKind system,
                      const GasParameters& g,
                      const std::vector<std::pair<double, double>>& samples,
                      Convention convention, double fd_step) {
  const double sigma = convention_sign(convention);
  double worst = 0.0;
  for (const auto& [x, t] : samples) {
    const double h = fd_step;
    const Vec3 v = candidate(x, t);
    const Vec3 vt = (candidate(x, t + h) - candidate(x, t - h)) / (2.0 * h);
    const Vec3 vx = (candidate(x + h, t) - candidate(x - h, t)) / (2.0 * h);
    Vec3 res{};
    switch (system) {
      case SystemKind::full: {
        const Mat3 A = euler_matrix(StateVector::from_vec(v), g);
        res = vt - sigma * (A * vx);
        break;
      }
      case SystemKind::reduced_sound: {
        const double sk = std::sqrt(g.kappa);
        const double v1 = sk * (v[0] - v[1] + 1.0) + g.u0;
        const double v2 = sk * (v[0] - v[1] - 1.0) + g.u0;
        res = {{vt[0] + v1 * vx[0], vt[1] + v2 * vx[1], 0.0}};
        break;
      }
      case SystemKind::reduced_kappa3: {
        const Mat3 R = reduced_matrix(region_map(v[0], v[1], v[2]), g);
        res = vt - sigma * (R * vx);
        break;
      }
    }
    worst = std::max(worst, norm(res));
  }
  return worst;
}

}  // namespace wavelab
