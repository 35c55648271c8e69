#include "wavelab/geometry.hpp"

#include <cmath>
#include <random>

namespace wavelab {

SurfacePatch::Jet2 SurfacePatch::jet(double s1, double s2) const {
  std::array<P2, 2> in;
  in[0].v = P1::seeded(s1, 0);
  in[1].v = P1::seeded(s2, 1);
  in[0].d[0] = P1(1.0);
  in[1].d[1] = P1(1.0);
  const auto out = f2_(in);
  Jet2 j;
  for (int c = 0; c < 3; ++c) {
    j.p[c] = out[c].v.v;
    j.d1[c] = out[c].d[0].v;
    j.d2[c] = out[c].d[1].v;
    j.d11[c] = out[c].d[0].d[0];
    j.d12[c] = out[c].d[0].d[1];
    j.d22[c] = out[c].d[1].d[1];
  }
  return j;
}

Vec3 SurfacePatch::unit_normal(double s1, double s2) const {
  const Jet2 j = jet(s1, s2);
  return orient_ * normalized(cross(j.d1, j.d2));
}

FundamentalForms SurfacePatch::fundamental_forms(double s1, double s2) const {
  const Jet2 j = jet(s1, s2);
  FundamentalForms f;
  f.E = dot(j.d1, j.d1);
  f.F = dot(j.d1, j.d2);
  f.G = dot(j.d2, j.d2);
  if (f.E * f.G - f.F * f.F <= 0.0)
    throw std::domain_error("surface is not immersed at (" + std::to_string(s1) + ", " +
                            std::to_string(s2) + ")");
  const Vec3 n = orient_ * normalized(cross(j.d1, j.d2));
  f.L = dot(j.d11, n);
  f.M = dot(j.d12, n);
  f.N = dot(j.d22, n);
  return f;
}

Curvatures SurfacePatch::curvatures(double s1, double s2) const {
  const FundamentalForms f = fundamental_forms(s1, s2);
  const double w = f.E * f.G - f.F * f.F;
  Curvatures c;
  c.K = (f.L * f.N - f.M * f.M) / w;
  c.H = (f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * w);
  return c;
}

StateVector region_map(double t1, double t2, double t3) {
  return {std::exp(2.0 * t1 + t3), std::exp(6.0 * t1), 2.0 * std::sqrt(3.0) * t2};
}

Mat3 region_map_jacobian(double t1, double t2, double t3) {
  (void)t2;
  Mat3 J;
  const double rho = std::exp(2.0 * t1 + t3);
  const double p = std::exp(6.0 * t1);
  J[0] = {2.0 * rho, 0.0, rho};
  J[1] = {6.0 * p, 0.0, 0.0};
  J[2] = {0.0, 2.0 * std::sqrt(3.0), 0.0};
  return J;
}

double region_map_det(double t1, double t2, double t3) {
  (void)t2;
  return 12.0 * std::sqrt(3.0) * std::exp(8.0 * t1 + t3);
}

std::array<double, 3> region_map_inverse(const StateVector& v) {
  const double t1 = std::log(v.p()) / 6.0;
  const double t2 = v.u() / (2.0 * std::sqrt(3.0));
  const double t3 = std::log(v.rho()) - 2.0 * t1;
  return {t1, t2, t3};
}

SurfacePatch phi_surface(double t3, SurfacePatch::Domain dom) {
  return SurfacePatch::analytic(
      "Phi(" + std::to_string(t3) + ")",
      [t3](const auto& s) {
        using T = std::decay_t<decltype(s[0])>;
        const T rho = exp(2.0 * s[0] + t3);
        const T p = exp(6.0 * s[0]);
        const T u = 2.0 * std::sqrt(3.0) * s[1];
        return std::array<T, 3>{rho, p, u};
      },
      dom);
}

SurfacePatch sigma_surface(double t3, SurfacePatch::Domain dom) {
  if (!(dom.s2_lo > 0.0))
    throw std::invalid_argument("sigma_surface: t2 must stay positive (log of t2)");
  return SurfacePatch::analytic(
      "Sigma(" + std::to_string(t3) + ")",
      [t3](const auto& s) {
        using T = std::decay_t<decltype(s[0])>;
        return std::array<T, 3>{2.0 * s[0] + t3, 6.0 * s[0],
                                std::log(2.0 * std::sqrt(3.0)) + log(s[1])};
      },
      dom);
}

double printed_L_formula(double t1, double t3) {
  return 48.0 * std::exp(t3) * std::exp(6.0 * t1) /
         std::sqrt(9.0 * std::exp(8.0 * t1) + std::exp(2.0 * t3));
}

double derived_L_magnitude(double t1, double t3) {
  return 24.0 * std::exp(6.0 * t1 + t3) /
         std::sqrt(9.0 * std::exp(8.0 * t1) + std::exp(2.0 * t3));
}

FoliationReport foliation_check(const std::vector<double>& t3_values, bool use_phi,
                                int samples, std::uint64_t seed) {
  for (size_t a = 0; a < t3_values.size(); ++a)
    for (size_t b = a + 1; b < t3_values.size(); ++b)
      if (t3_values[a] == t3_values[b])
        throw std::invalid_argument("foliation_check: t3 values must be distinct");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> par(1e-3, 2.0);

  FoliationReport rep;
  std::vector<std::vector<Vec3>> leaves;
  for (double t3 : t3_values) {
    const SurfacePatch patch = use_phi ? phi_surface(t3) : sigma_surface(t3);
    std::vector<Vec3> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) pts.push_back(patch.point(par(rng), par(rng)));
    leaves.push_back(std::move(pts));
  }
  rep.disjoint = true;
  rep.min_cross_leaf_distance = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < leaves.size(); ++a) {
    for (size_t b = a + 1; b < leaves.size(); ++b) {
      for (const auto& pa : leaves[a]) {
        for (const auto& pb : leaves[b]) {
          const double d = norm(pa - pb);
          if (d < rep.min_cross_leaf_distance) rep.min_cross_leaf_distance = d;
          if (d < 1e-10) {
            rep.disjoint = false;
            rep.collision = {pa, pb};
          }
        }
      }
    }
  }

  // coverage: closed-form inversion recovers random points of the image cone
  std::uniform_real_distribution<double> tpar(0.05, 1.5);
  for (int i = 0; i < samples; ++i) {
    const double t1 = tpar(rng), t2 = tpar(rng), t3 = tpar(rng);
    const auto inv = region_map_inverse(region_map(t1, t2, t3));
    rep.inverse_recovery_error =
        std::max({rep.inverse_recovery_error, std::abs(inv[0] - t1), std::abs(inv[1] - t2),
                  std::abs(inv[2] - t3)});
  }
  return rep;
}

}  // namespace wavelab
