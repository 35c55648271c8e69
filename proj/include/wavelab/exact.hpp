#pragma once

#include <functional>
#include <string>

#include "wavelab/euler.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

/// Smooth bump profile. gauss has tails below machine precision past 6 widths;
/// cos2 and quartic are compactly supported on |x - center| <= width.
struct BumpProfile {
  enum class Shape { gauss, cos2, quartic };
  Shape shape = Shape::gauss;
  double amplitude = 0.1;
  double center = 0.0;
  double width = 0.2;

  double operator()(double x) const {
    const double s = (x - center) / width;
    switch (shape) {
      case Shape::gauss:
        return std::abs(s) > 6.0 ? 0.0 : amplitude * std::exp(-s * s);
      case Shape::cos2: {
        if (std::abs(s) >= 1.0) return 0.0;
        const double c = std::cos(0.5 * M_PI * s);
        return amplitude * c * c;
      }
      case Shape::quartic: {
        if (std::abs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return amplitude * q * q;
      }
    }
    return 0.0;
  }

  double min_value() const { return std::min(0.0, amplitude); }
  double max_value() const { return std::max(0.0, amplitude); }
  /// half-width of the numerically relevant support (tails below 1e-8 of the
  /// amplitude for the gauss shape)
  double support_radius() const {
    return shape == Shape::gauss ? 4.5 * width : width;
  }

  static Shape shape_from_name(const std::string& name);
};

/// Closed-form integral curve of gamma+- / gamma0 through an anchor state:
/// rho = rho_a e^r, p = p_a e^{kr}, u = u_a +- (2 c_a/(k-1))(e^{(k-1)r/2} - 1)
/// for the sound families, and (rho_a + r, p_a, u_a) for the entropic one.
struct FamilyCurve {
  WaveKind kind;
  GasParameters g;
  Vec3 anchor;

  Vec3 state(double r) const;
  double speed(double r) const;  // characteristic speed v_s along the curve
};

FamilyCurve family_curve(WaveKind kind, const GasParameters& g, const StateVector& anchor);

/// Single Riemann wave: v = f(r), r solved per (x, t) from the implicit phase
/// relation r = phi(x + sigma v_s(f(r)) t), sigma = +1 paper / -1 standard.
SpaceTimeCandidate riemann_wave_candidate(WaveKind kind, const GasParameters& g,
                                          const BumpProfile& phi, Convention convention,
                                          const StateVector& anchor);

/// S+S- double wave for kappa = 3 built from the commuting rescaled fields:
/// rho = 1 + (r1 + r2)/c_a, p = p_a rho^3, u = u0 + r1 - r2, with each
/// invariant transported at its characteristic speed (implicit, bisected).
SpaceTimeCandidate double_wave_kappa3_candidate(const GasParameters& g,
                                                const BumpProfile& phi1,
                                                const BumpProfile& phi2,
                                                Convention convention);

/// The printed double wave driven by the printed reduced system, valid while
/// the two supports remain disjoint (each invariant then moves independently).
/// predicted_residual gives the analytic size of the full-system defect in the
/// standard convention: the pressure equation misses by
/// kappa^{3/2} (r1_x - r2_x) ((kappa-1) rho + p0) while the other two close.
struct PrintedPairSolution {
  SpaceTimeCandidate state;
  std::function<double(double, double)> predicted_residual;
};

PrintedPairSolution printed_double_wave(const GasParameters& g, const BumpProfile& phi1,
                                        const BumpProfile& phi2);

/// Initial Euler frame: background plus simple-wave patches with disjoint supports.
struct WavePatch {
  WaveKind kind;
  BumpProfile profile;
};

Grid1D compose_initial_frame(double x0, double x1, int nx, const StateVector& background,
                             const GasParameters& g, const std::vector<WavePatch>& waves);

}  // namespace wavelab
