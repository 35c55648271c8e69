#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavelab/euler.hpp"
#include "wavelab/fields.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

/// Result of a quasi-rectifiability test over a sampled state set.
struct QuasiRectReport {
  bool verdict = false;
  struct PairResidual {
    int i = 0, j = 0;
    double max_residual = 0.0;
  };
  std::vector<PairResidual> per_pair;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string criterion;                    // "span" | "curl" | "flux"
  std::optional<StateVector> degenerate_at; // wedge-dependence witness, if any
  double tolerance = 1e-8;
};

namespace detail {

inline double relative_span_residual(const Vec3& target, const VectorField& Xi,
                                     const VectorField& Xj, const StateVector& v) {
  const double nt = norm(target);
  const double scale = norm(Xi.value(v)) * norm(Xj.value(v));
  if (nt <= 1e-14 * std::max(scale, 1.0)) return 0.0;
  const auto exp2 = expand_in_span(target, {Xi, Xj}, v);
  return exp2.residual / nt;
}

}  // namespace detail

/// Pairwise bracket-in-span test: true iff every [X_i, X_j] stays in
/// span{X_i, X_j} at all sampled states (residual relative to bracket norm).
inline QuasiRectReport span_test(const std::vector<VectorField>& family, int samples,
                                 std::uint64_t seed = 12345, double tol = 1e-8) {
  if (family.size() < 2 || family.size() > 3)
    throw std::invalid_argument("span_test: family size must be 2 or 3");
  QuasiRectReport rep;
  rep.criterion = "span";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  StateSampler sampler(seed);
  const auto states = sampler.sample(samples);

  const int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VectorField bracket = lie_bracket(family[i], family[j]);
      double worst = 0.0;
      for (const auto& v : states) {
        if (!wedge_independent({family[i], family[j]}, v)) {
          rep.degenerate_at = v;
          rep.verdict = false;
          return rep;
        }
        worst = std::max(worst,
                         detail::relative_span_residual(bracket.value(v), family[i], family[j], v));
      }
      rep.per_pair.push_back({i, j, worst});
    }
  }
  rep.verdict = true;
  for (const auto& pr : rep.per_pair) rep.verdict = rep.verdict && pr.max_residual <= tol;
  return rep;
}

/// Equivalent criterion through curl(X_i x X_j) in span{X_i, X_j}.
inline QuasiRectReport curl_span_test(const std::vector<VectorField>& family, int samples,
                                      std::uint64_t seed = 12345, double tol = 1e-8) {
  if (family.size() != 3)
    throw std::invalid_argument("curl_span_test: exactly 3 fields required");
  QuasiRectReport rep;
  rep.criterion = "curl";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  StateSampler sampler(seed);
  const auto states = sampler.sample(samples);

  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const VectorField cf = cross_field(family[i], family[j]);
      double worst = 0.0;
      for (const auto& v : states) {
        if (!wedge_independent({family[i], family[j]}, v)) {
          rep.degenerate_at = v;
          rep.verdict = false;
          return rep;
        }
        worst = std::max(worst,
                         detail::relative_span_residual(curl(cf, v), family[i], family[j], v));
      }
      rep.per_pair.push_back({i, j, worst});
    }
  }
  rep.verdict = true;
  for (const auto& pr : rep.per_pair) rep.verdict = rep.verdict && pr.max_residual <= tol;
  return rep;
}

/// Circulation decay table for the limit criterion: for each pair and radius,
/// (1/(pi r^2)) times the circulation of X_i x X_j around the circle of radius
/// r centered at p inside the plane spanned by X_i(p), X_j(p).
struct FluxDecayTable {
  struct PairTable {
    int i = 0, j = 0;
    std::vector<double> values;   // one per radius
    double extrapolated = 0.0;
    bool quadrature_converged = true;
  };
  std::vector<double> radii;
  std::vector<PairTable> pairs;
};

inline FluxDecayTable flux_integral_test(const std::vector<VectorField>& family,
                                         const StateVector& point,
                                         const std::vector<double>& radii) {
  if (family.size() < 2 || family.size() > 3)
    throw std::invalid_argument("flux_integral_test: 2 or 3 fields required");
  for (size_t k = 1; k < radii.size(); ++k)
    if (!(radii[k] < radii[k - 1]) || !(radii[k] > 0.0))
      throw std::invalid_argument("flux_integral_test: radii must decrease toward 0");

  static const GaussLegendre g64 = gauss_legendre(64);
  static const GaussLegendre g32 = gauss_legendre(32);

  FluxDecayTable table;
  table.radii = radii;
  const int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      FluxDecayTable::PairTable pt;
      pt.i = i;
      pt.j = j;
      // orthonormal frame of the plane spanned by the pair at the center
      const Vec3 a = family[i].value(point);
      const Vec3 b = family[j].value(point);
      const Vec3 e1 = normalized(a);
      const Vec3 b_perp = b - dot(b, e1) * e1;
      const Vec3 e2 = normalized(b_perp);
      const VectorField cf = cross_field(family[i], family[j]);

      auto circulation = [&](double r, const GaussLegendre& rule) {
        double acc = 0.0;
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
          const double theta = M_PI * (rule.nodes[q] + 1.0);  // map [-1,1] -> [0,2pi]
          const Vec3 x = point.vec() + r * (std::cos(theta) * e1 + std::sin(theta) * e2);
          if (!(x[0] > 0.0) || !(x[1] > 0.0))
            throw invalid_state("flux circle leaves the positive cone; reduce radius");
          const Vec3 f = to_vec3(cf.eval_any(to_v3(x)));
          const Vec3 dl = r * (-std::sin(theta) * e1 + std::cos(theta) * e2);
          acc += rule.weights[q] * dot(f, dl);
        }
        // d(theta) = pi d(node); the pi cancels against the disk-area normalization
        return acc / (r * r);
      };

      std::vector<double> h2;
      for (double r : radii) {
        const double v64 = circulation(r, g64);
        const double v32 = circulation(r, g32);
        if (std::abs(v64 - v32) > 1e-6 * std::max(1.0, std::abs(v64)))
          pt.quadrature_converged = false;
        pt.values.push_back(v64);
        h2.push_back(r * r);
      }
      pt.extrapolated = extrapolate_to_zero(h2, pt.values);
      table.pairs.push_back(std::move(pt));
    }
  }
  return table;
}

/// Checks [h_i X_i, h_j X_j] = 0 at sampled states, with residual measured
/// relative to the product of the rescaled field norms.
struct RescalingReport {
  bool ok = false;
  double max_residual = 0.0;
  std::string message;
  std::uint64_t seed = 0;
};

inline RescalingReport verify_rescaling(const std::vector<VectorField>& family,
                                        const std::vector<ScalarField>& h, int samples,
                                        std::uint64_t seed = 12345, double tol = 1e-8) {
  if (family.size() != h.size() || family.size() < 2)
    throw std::invalid_argument("verify_rescaling: need one h per field");
  RescalingReport rep;
  rep.seed = seed;
  std::vector<VectorField> scaled;
  for (size_t i = 0; i < family.size(); ++i) scaled.push_back(scale_field(h[i], family[i]));

  StateSampler sampler(seed);
  const auto states = sampler.sample(samples);
  for (size_t i = 0; i < scaled.size(); ++i) {
    for (size_t j = i + 1; j < scaled.size(); ++j) {
      const VectorField bracket = lie_bracket(scaled[i], scaled[j]);
      for (const auto& v : states) {
        try {
          const double nb = norm(bracket.value(v));
          const double scale = norm(scaled[i].value(v)) * norm(scaled[j].value(v));
          rep.max_residual = std::max(rep.max_residual, nb / std::max(scale, 1e-300));
        } catch (const invalid_state& e) {
          rep.ok = false;
          rep.message = e.what();
          return rep;
        }
      }
    }
  }
  rep.ok = rep.max_residual <= tol;
  return rep;
}

/// One-forms dual to a frame: eta_i(X_j) = delta_ij. A 2-field family is
/// completed by the cross field, so eta_i also annihilates the normal direction.
struct DualFrame {
  std::vector<VectorField> one_forms;
  std::vector<VectorField> basis;
};

inline DualFrame dual_frame(const std::vector<VectorField>& basis) {
  if (basis.size() < 2 || basis.size() > 3)
    throw std::invalid_argument("dual_frame: 2 or 3 fields");
  std::vector<VectorField> frame = basis;
  if (frame.size() == 2) frame.push_back(cross_field(frame[0], frame[1]));

  DualFrame out;
  out.basis = basis;
  for (size_t i = 0; i < basis.size(); ++i) {
    out.one_forms.push_back(VectorField::analytic(
        "eta_" + std::to_string(i), [frame, i](const auto& v) {
          using T = std::decay_t<decltype(v[0])>;
          std::array<V3<T>, 3> col;
          for (int jj = 0; jj < 3; ++jj) col[jj] = frame[jj].eval_any(v);
          // row i of the inverse of the matrix with columns col[j]:
          // inv[i][j] = cofactor(j, i) / det
          auto cof = [&col](int r, int cidx) {
            const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
            const int c1 = (cidx + 1) % 3, c2 = (cidx + 2) % 3;
            return col[c1][r1] * col[c2][r2] - col[c2][r1] * col[c1][r2];
          };
          T det = T(0.0);
          for (int r = 0; r < 3; ++r) det += col[0][r] * cof(r, 0);
          // row i of the inverse: component j is cof(j, i) / det
          const int ii = static_cast<int>(i);
          return V3<T>{cof(0, ii) / det, cof(1, ii) / det, cof(2, ii) / det};
        }));
  }
  return out;
}

/// Evaluates d(h eta)(X_a, X_b) = X_a(h eta(X_b)) - X_b(h eta(X_a)) - h eta([X_a, X_b])
/// over all pairs of distribution fields; true iff all values <= tol.
struct ExactnessReport {
  bool exact = false;
  double max_value = 0.0;
};

inline ExactnessReport exactness_check(const VectorField& eta, const ScalarField& h,
                                       const std::vector<VectorField>& distribution,
                                       int samples, std::uint64_t seed = 12345,
                                       double tol = 1e-8) {
  ExactnessReport rep;
  StateSampler sampler(seed);
  const auto states = sampler.sample(samples);

  auto weighted_pairing = [&eta, &h](const VectorField& X) {
    return ScalarField::analytic("h*eta(" + X.label() + ")", [eta, h, X](const auto& v) {
      const auto e = eta.eval_any(v);
      const auto x = X.eval_any(v);
      return h.eval_any(v) * (e[0] * x[0] + e[1] * x[1] + e[2] * x[2]);
    });
  };

  for (size_t a = 0; a < distribution.size(); ++a) {
    for (size_t b = a + 1; b < distribution.size(); ++b) {
      const ScalarField sa = weighted_pairing(distribution[b]);
      const ScalarField sb = weighted_pairing(distribution[a]);
      const VectorField bracket = lie_bracket(distribution[a], distribution[b]);
      for (const auto& v : states) {
        const double t1 = derive_along(distribution[a], sa, v);
        const double t2 = derive_along(distribution[b], sb, v);
        const Vec3 br = bracket.value(v);
        const Vec3 ev = to_vec3(eta.eval_any(to_v3(v.vec())));
        const double t3 = h.value(v) * dot(ev, br);
        rep.max_value = std::max(rep.max_value, std::abs(t1 - t2 - t3));
      }
    }
  }
  rep.exact = rep.max_value <= tol;
  return rep;
}

/// Runs exactness_check for each dual form with both weightings h_i and 1/h_i
/// and reports which orientation of the integrating-factor statement the
/// supplied rescaling satisfies.
struct OrientationReport {
  bool direct = false;    // d(h_i eta_i)|_D = 0
  bool inverse = false;   // d(h_i^{-1} eta_i)|_D = 0
  double direct_max = 0.0;
  double inverse_max = 0.0;
};

inline OrientationReport rescaling_orientation(const std::vector<VectorField>& family,
                                               const std::vector<ScalarField>& h, int samples,
                                               std::uint64_t seed = 12345, double tol = 1e-8) {
  const DualFrame frame = dual_frame(family);
  OrientationReport rep;
  rep.direct = true;
  rep.inverse = true;
  for (size_t i = 0; i < family.size(); ++i) {
    const auto d = exactness_check(frame.one_forms[i], h[i], family, samples, seed, tol);
    const auto inv = exactness_check(frame.one_forms[i], reciprocal(h[i]), family, samples, seed, tol);
    rep.direct = rep.direct && d.exact;
    rep.inverse = rep.inverse && inv.exact;
    rep.direct_max = std::max(rep.direct_max, d.max_value);
    rep.inverse_max = std::max(rep.inverse_max, inv.max_value);
  }
  return rep;
}

}  // namespace wavelab
