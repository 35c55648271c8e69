#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/dual.hpp"
#include "wavelab/linalg.hpp"
#include "wavelab/state.hpp"

namespace wavelab {

struct FundamentalForms {
  double E = 0, F = 0, G = 0;  // first form
  double L = 0, M = 0, N = 0;  // second form against the oriented unit normal
};

struct Curvatures {
  double K = 0;  // Gaussian
  double H = 0;  // mean
};

/// Parametrized 2-surface in state space; derivatives by dual numbers in the
/// two surface parameters. Orientation: normal along d1 x d2 times `orient`.
class SurfacePatch {
 public:
  using P1 = Dual<2, double>;
  using P2 = Dual<2, Dual<2, double>>;

  struct Domain {
    double s1_lo = 0, s1_hi = 1, s2_lo = 0, s2_hi = 1;
  };

  template <class F>
  static SurfacePatch analytic(std::string label, F f, Domain dom, double orient = 1.0) {
    SurfacePatch p;
    p.label_ = std::move(label);
    p.dom_ = dom;
    p.orient_ = orient;
    p.f0_ = [f](double a, double b) { return to_vec3(f(std::array<double, 2>{a, b})); };
    p.f2_ = [f](const std::array<P2, 2>& s) { return f(s); };
    return p;
  }

  const Domain& domain() const { return dom_; }
  const std::string& label() const { return label_; }
  double orientation() const { return orient_; }

  Vec3 point(double s1, double s2) const { return f0_(s1, s2); }

  struct Jet2 {
    Vec3 p;          // position
    Vec3 d1, d2;     // tangents
    Vec3 d11, d12, d22;  // second derivatives
  };
  Jet2 jet(double s1, double s2) const;

  Vec3 unit_normal(double s1, double s2) const;
  FundamentalForms fundamental_forms(double s1, double s2) const;
  Curvatures curvatures(double s1, double s2) const;

 private:
  std::string label_;
  Domain dom_{};
  double orient_ = 1.0;
  std::function<Vec3(double, double)> f0_;
  std::function<std::array<P2, 3>(const std::array<P2, 2>&)> f2_;
};

/// v = (e^{2t1+t3}, e^{6t1}, 2 sqrt(3) t2); the kappa = 3 parametrization of
/// the non-elastic superposition region.
StateVector region_map(double t1, double t2, double t3);
Mat3 region_map_jacobian(double t1, double t2, double t3);
double region_map_det(double t1, double t2, double t3);
/// closed-form inverse: t1 = ln p / 6, t2 = u / (2 sqrt 3), t3 = ln rho - 2 t1
std::array<double, 3> region_map_inverse(const StateVector& v);

/// Phi(t3): (t1, t2) -> (e^{2t1} e^{t3}, e^{6t1}, 2 sqrt(3) t2)
SurfacePatch phi_surface(double t3, SurfacePatch::Domain dom = {0.0, 2.0, 0.0, 2.0});
/// Sigma(t3): (t1, t2) -> (2t1 + t3, 6t1, ln(2 sqrt 3) + ln t2), t2 > 0
SurfacePatch sigma_surface(double t3, SurfacePatch::Domain dom = {0.0, 2.0, 1e-3, 2.0});

/// The second-form entry printed for Phi(t3): 48 e^{t3} e^{6t1} / (9 e^{8t1} + e^{2t3})^{1/2}.
double printed_L_formula(double t1, double t3);
/// Our derived magnitude: 24 e^{6t1+t3} / (9 e^{8t1} + e^{2t3})^{1/2}.
double derived_L_magnitude(double t1, double t3);

struct FoliationReport {
  bool disjoint = false;
  double min_cross_leaf_distance = 0.0;
  std::optional<std::pair<Vec3, Vec3>> collision;
  /// max error of closed-form inversion on random states in the image cone
  double inverse_recovery_error = 0.0;
};

FoliationReport foliation_check(const std::vector<double>& t3_values, bool use_phi,
                                int samples, std::uint64_t seed = 777);

}  // namespace wavelab
