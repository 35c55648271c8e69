#include "wavelab/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace wavelab {

BumpProfile::Shape BumpProfile::shape_from_name(const std::string& name) {
  if (name == "gauss") return Shape::gauss;
  if (name == "cos2") return Shape::cos2;
  if (name == "quartic") return Shape::quartic;
  throw std::invalid_argument("unknown bump shape: " + name);
}

Vec3 FamilyCurve::state(double r) const {
  const double rho_a = anchor[0], p_a = anchor[1], u_a = anchor[2];
  if (kind == WaveKind::E) return {{rho_a + r, p_a, u_a}};
  const double k = g.kappa;
  const double sgn = kind == WaveKind::Splus ? 1.0 : -1.0;
  const double c_a = std::sqrt(k * p_a / rho_a);
  const double rho = rho_a * std::exp(r);
  const double p = p_a * std::exp(k * r);
  double u;
  if (std::abs(k - 1.0) < 1e-14) {
    u = u_a + sgn * c_a * r;
  } else {
    u = u_a + sgn * (2.0 * c_a / (k - 1.0)) * (std::exp(0.5 * (k - 1.0) * r) - 1.0);
  }
  return {{rho, p, u}};
}

double FamilyCurve::speed(double r) const {
  const Vec3 v = state(r);
  switch (kind) {
    case WaveKind::E:
      return v[2];
    case WaveKind::Splus:
      return v[2] + std::sqrt(g.kappa * v[1] / v[0]);
    case WaveKind::Sminus:
      return v[2] - std::sqrt(g.kappa * v[1] / v[0]);
  }
  return 0.0;
}

FamilyCurve family_curve(WaveKind kind, const GasParameters& g, const StateVector& anchor) {
  return FamilyCurve{kind, g, anchor.vec()};
}

namespace {

/// Solve r = phi(x + sigma * speed(r) * t) by bisection on the profile range.
template <class SpeedFn>
double solve_phase(const BumpProfile& phi, double x, double t, double sigma,
                   const SpeedFn& speed) {
  const double pad = 1e-9 + 1e-12 * std::abs(phi.amplitude);
  double lo = phi.min_value() - pad;
  double hi = phi.max_value() + pad;
  auto g = [&](double r) { return r - phi(x + sigma * speed(r) * t); };
  double glo = g(lo), ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0)
    throw std::runtime_error("phase bracket failed (profile range exceeded)");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpaceTimeCandidate riemann_wave_candidate(WaveKind kind, const GasParameters& g,
                                          const BumpProfile& phi, Convention convention,
                                          const StateVector& anchor) {
  const FamilyCurve curve = family_curve(kind, g, anchor);
  const double sigma = convention_sign(convention);
  return [curve, phi, sigma](double x, double t) {
    const double r =
        solve_phase(phi, x, t, sigma, [&curve](double rr) { return curve.speed(rr); });
    return curve.state(r);
  };
}

SpaceTimeCandidate double_wave_kappa3_candidate(const GasParameters& g,
                                                const BumpProfile& phi1,
                                                const BumpProfile& phi2,
                                                Convention convention) {
  if (std::abs(g.kappa - 3.0) > 1e-12)
    throw std::invalid_argument("double_wave_kappa3_candidate requires kappa = 3");
  const double p_a = g.A + g.p0;
  if (!(p_a > 0.0)) throw std::invalid_argument("anchor pressure must be positive");
  const double c_a = std::sqrt(3.0 * p_a);
  const double u0 = g.u0;
  const double sigma = convention_sign(convention);

  return [phi1, phi2, c_a, p_a, u0, sigma](double x, double t) {
    const double r1 = solve_phase(phi1, x, t, sigma,
                                  [&](double r) { return u0 + c_a + 2.0 * r; });
    const double r2 = solve_phase(phi2, x, t, sigma,
                                  [&](double r) { return u0 - c_a - 2.0 * r; });
    const double rho = 1.0 + (r1 + r2) / c_a;
    if (!(rho > 0.0)) throw std::runtime_error("double wave left the positive cone");
    return Vec3{{rho, p_a * rho * rho * rho, u0 + r1 - r2}};
  };
}

PrintedPairSolution printed_double_wave(const GasParameters& g, const BumpProfile& phi1,
                                        const BumpProfile& phi2) {
  const double sk = std::sqrt(g.kappa);
  const double u0 = g.u0;
  // pre-crossing, each printed invariant rides its own scalar equation
  auto solve_r1 = [phi1, sk, u0](double x, double t) {
    return solve_phase(phi1, x, t, -1.0, [&](double r) { return sk * (r + 1.0) + u0; });
  };
  auto solve_r2 = [phi2, sk, u0](double x, double t) {
    return solve_phase(phi2, x, t, -1.0, [&](double r) { return sk * (-r - 1.0) + u0; });
  };

  PrintedPairSolution out;
  const GasParameters gp = g;
  out.state = [solve_r1, solve_r2, gp](double x, double t) {
    return double_wave_state(solve_r1(x, t), solve_r2(x, t), gp).vec();
  };
  out.predicted_residual = [solve_r1, solve_r2, gp](double x, double t) {
    const double h = 1e-6;
    const double r1 = solve_r1(x, t), r2 = solve_r2(x, t);
    const double r1x = (solve_r1(x + h, t) - solve_r1(x - h, t)) / (2.0 * h);
    const double r2x = (solve_r2(x + h, t) - solve_r2(x - h, t)) / (2.0 * h);
    const double rho = gp.A * std::exp(r1 + r2);
    return std::abs(gp.kappa * std::sqrt(gp.kappa) * (r1x - r2x) *
                    ((gp.kappa - 1.0) * rho + gp.p0));
  };
  return out;
}

Grid1D compose_initial_frame(double x0, double x1, int nx, const StateVector& background,
                             const GasParameters& g, const std::vector<WavePatch>& waves) {
  // supports must not overlap: each patch replaces the background locally
  for (size_t a = 0; a < waves.size(); ++a) {
    for (size_t b = a + 1; b < waves.size(); ++b) {
      const double ra = waves[a].profile.support_radius();
      const double rb = waves[b].profile.support_radius();
      if (std::abs(waves[a].profile.center - waves[b].profile.center) < ra + rb)
        throw std::invalid_argument("wave patches must have disjoint supports");
    }
  }
  Grid1D grid(x0, x1, nx, 3, GridKind::euler_state);
  std::vector<FamilyCurve> curves;
  curves.reserve(waves.size());
  for (const auto& w : waves) curves.push_back(family_curve(w.kind, g, background));
  for (int i = 0; i < nx; ++i) {
    Vec3 v = background.vec();
    for (size_t k = 0; k < waves.size(); ++k) {
      const double r = waves[k].profile(grid.x(i));
      if (r != 0.0) v = curves[k].state(r);
    }
    grid.set_node3(i, v);
  }
  return grid;
}

}  // namespace wavelab
