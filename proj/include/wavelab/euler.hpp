#pragma once

#include <optional>
#include <vector>

#include "wavelab/fields.hpp"

namespace wavelab {

/// Sign convention of the quasilinear system:
///   paper     v_t = A(v) v_x
///   standard  v_t + A(v) v_x = 0
enum class Convention { paper, standard };

inline double convention_sign(Convention c) { return c == Convention::paper ? 1.0 : -1.0; }

enum class WaveKind { Splus = 0, E = 1, Sminus = 2 };

inline const char* wave_kind_name(WaveKind k) {
  switch (k) {
    case WaveKind::Splus: return "S+";
    case WaveKind::E: return "E";
    case WaveKind::Sminus: return "S-";
  }
  return "?";
}

/// Coefficient matrix of the Euler system,
/// rows/cols ordered (rho, p, u):  [[u,0,rho],[0,u,kp],[0,1/rho,u]].
inline Mat3 euler_matrix(const StateVector& v, const GasParameters& g) {
  Mat3 A;
  A[0] = {v.u(), 0.0, v.rho()};
  A[1] = {0.0, v.u(), g.kappa * v.p()};
  A[2] = {0.0, 1.0 / v.rho(), v.u()};
  return A;
}

inline ScalarField sound_speed_field(const GasParameters& g) {
  const double k = g.kappa;
  return ScalarField::analytic("c", [k](const auto& v) { return sqrt(k * v[1] / v[0]); });
}

/// One characteristic family: speed v_s, eigenfield gamma_s, and the
/// covector lambda^s = (-v_s, 1) in (t, x) components.
struct CharacteristicField {
  WaveKind kind;
  ScalarField speed;
  VectorField gamma;

  std::array<double, 2> covector(const StateVector& v) const {
    return {-speed.value(v), 1.0};
  }
};

inline VectorField gamma_plus(const GasParameters& g) {
  const double k = g.kappa;
  return VectorField::analytic("gamma+", [k](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    const T c = sqrt(k * v[1] / v[0]);
    return V3<T>{v[0], k * v[1], c};
  });
}

inline VectorField gamma_minus(const GasParameters& g) {
  const double k = g.kappa;
  return VectorField::analytic("gamma-", [k](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    const T c = sqrt(k * v[1] / v[0]);
    return V3<T>{v[0], k * v[1], -c};
  });
}

inline VectorField gamma_zero(const GasParameters&) {
  return VectorField::constant({{1.0, 0.0, 0.0}}, "gamma0");
}

/// The three families (S+, E, S-) with speeds (u+c, u, u-c), c = sqrt(kp/rho).
inline std::array<CharacteristicField, 3> characteristic_fields(const GasParameters& g) {
  const double k = g.kappa;
  auto speed_p = ScalarField::analytic("u+c", [k](const auto& v) {
    return v[2] + sqrt(k * v[1] / v[0]);
  });
  auto speed_0 = ScalarField::analytic("u", [](const auto& v) { return v[2]; });
  auto speed_m = ScalarField::analytic("u-c", [k](const auto& v) {
    return v[2] - sqrt(k * v[1] / v[0]);
  });
  return {CharacteristicField{WaveKind::Splus, speed_p, gamma_plus(g)},
          CharacteristicField{WaveKind::E, speed_0, gamma_zero(g)},
          CharacteristicField{WaveKind::Sminus, speed_m, gamma_minus(g)}};
}

/// w1 = gamma+ + gamma- = (2rho, 2kp, 0),  w2 = gamma+ - gamma- = (0, 0, 2c).
inline std::pair<VectorField, VectorField> transformed_basis(const GasParameters& g) {
  const double k = g.kappa;
  auto w1 = VectorField::analytic("w1", [k](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    return V3<T>{2.0 * v[0], 2.0 * k * v[1], T(0.0)};
  });
  auto w2 = VectorField::analytic("w2", [k](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    return V3<T>{T(0.0), T(0.0), 2.0 * sqrt(k * v[1] / v[0])};
  });
  return {w1, w2};
}

/// The rescaling functions shipped with the Euler model:
/// h+- = (kp/rho)^(-1/2) for gamma+-, h2 = (rho/p)^(1/2) for w2, h0 = rho for gamma0.
inline ScalarField rescale_h_sound(const GasParameters& g) {
  const double k = g.kappa;
  return ScalarField::analytic("(kp/rho)^-1/2",
                               [k](const auto& v) { return sqrt(v[0] / (k * v[1])); });
}

inline ScalarField rescale_h2() {
  return ScalarField::analytic("(rho/p)^1/2", [](const auto& v) { return sqrt(v[0] / v[1]); });
}

inline ScalarField rescale_h0() {
  return ScalarField::analytic("rho", [](const auto& v) { return v[0]; });
}

/// Analytic eigen-structure of euler_matrix: columns gamma_s, rows l_s with
/// l_s . gamma_t = delta, ordered (S+, E, S-).
struct EulerDecomposition {
  std::array<double, 3> lambda;
  std::array<Vec3, 3> right;
  std::array<Vec3, 3> left;
};

inline EulerDecomposition euler_decomposition(const Vec3& v, const GasParameters& g) {
  const double rho = v[0], p = v[1], u = v[2];
  const double k = g.kappa;
  const double c = std::sqrt(k * p / rho);
  EulerDecomposition d;
  d.lambda = {u + c, u, u - c};
  d.right = {Vec3{{rho, k * p, c}}, Vec3{{1.0, 0.0, 0.0}}, Vec3{{rho, k * p, -c}}};
  d.left = {Vec3{{0.0, 1.0 / (2.0 * k * p), c * rho / (2.0 * k * p)}},
            Vec3{{1.0, -rho / (k * p), 0.0}},
            Vec3{{0.0, 1.0 / (2.0 * k * p), -c * rho / (2.0 * k * p)}}};
  return d;
}

// ---------------------------------------------------------------------------
// simple waves

struct SimpleWaveCurve {
  WaveKind kind;
  std::vector<double> r;
  std::vector<StateVector> states;
  /// max relative deviation of p from A rho^kappa + p0 along the curve
  double pressure_claim_error = 0.0;
  /// spread of u - g(rho) for the two readings of the printed velocity
  /// relation (constant-fitted); meaningful for S+- only
  double u_reading_standard = 0.0;
  double u_reading_literal = 0.0;
};

namespace detail {

/// Adaptive Dormand-Prince RK45 for dy/dr = f(y), integrating through the
/// sorted targets on one side of 0. Positivity of (rho, p) enforced.
template <class F>
void rk45_collect(const F& f, Vec3 y0, const std::vector<double>& targets, double tol,
                  std::vector<Vec3>& out) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2; (void)c3; (void)c4; (void)c5;

  double r = 0.0;
  Vec3 y = y0;
  for (double target : targets) {
    const double dir = target >= r ? 1.0 : -1.0;
    double h = dir * std::max(1e-4, std::abs(target - r) / 16.0);
    int steps = 0;
    while (dir * (target - r) > 1e-14 * std::max(1.0, std::abs(target))) {
      if (++steps > 100000)
        throw solver_halt(solver_halt::Reason::gradient_blowup,
                          "simple wave integration failed to converge");
      if (dir * (r + h - target) > 0.0) h = target - r;
      const Vec3 k1 = f(y);
      const Vec3 k2 = f(y + h * a21 * k1);
      const Vec3 k3 = f(y + h * (a31 * k1 + a32 * k2));
      const Vec3 k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec3 k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec3 k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vec3 ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vec3 k7 = f(ynew);
      const Vec3 err_v = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double err = 0.0;
      for (int i = 0; i < 3; ++i)
        err = std::max(err, std::abs(err_v[i]) / (tol * (1.0 + std::abs(ynew[i]))));
      if (err <= 1.0) {
        r += h;
        y = ynew;
        if (!(y[0] > 0.0) || !(y[1] > 0.0))
          throw solver_halt(solver_halt::Reason::positivity_loss,
                            "simple wave left the positive cone");
      }
      const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h *= fac;
      if (std::abs(h) < 1e-14)
        throw solver_halt(solver_halt::Reason::gradient_blowup,
                          "simple wave step size underflow");
    }
    out.push_back(y);
  }
}

}  // namespace detail

/// Simple wave states. E: f(r) = (r, p_a, u_a) with r > 0. S+-: integral curve
/// of gamma+- through the anchor (adaptive RK, tolerance 1e-10), with the
/// printed algebraic relations evaluated as claims along the curve.
inline SimpleWaveCurve simple_wave(WaveKind kind, const GasParameters& g,
                                   std::vector<double> r_samples,
                                   std::optional<StateVector> anchor = std::nullopt) {
  const StateVector base = anchor ? *anchor : StateVector(1.0, g.A + g.p0, g.u0);
  SimpleWaveCurve out;
  out.kind = kind;

  if (kind == WaveKind::E) {
    for (double r : r_samples) {
      out.states.emplace_back(r, base.p(), base.u());  // throws if r <= 0
      out.r.push_back(r);
    }
    return out;
  }

  const VectorField gamma = kind == WaveKind::Splus ? gamma_plus(g) : gamma_minus(g);
  auto rhs = [&gamma](const Vec3& y) { return to_vec3(gamma.eval_any(to_v3(y))); };

  std::vector<double> sorted = r_samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> neg, pos;
  for (double r : sorted) (r < 0.0 ? neg : pos).push_back(r);
  std::sort(neg.begin(), neg.end(), std::greater<>());  // walk outward from 0

  std::vector<std::pair<double, Vec3>> samples;
  std::vector<Vec3> ys;
  detail::rk45_collect(rhs, base.vec(), neg, 1e-10, ys);
  for (size_t i = 0; i < neg.size(); ++i) samples.emplace_back(neg[i], ys[i]);
  ys.clear();
  detail::rk45_collect(rhs, base.vec(), pos, 1e-10, ys);
  for (size_t i = 0; i < pos.size(); ++i) samples.emplace_back(pos[i], ys[i]);
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const double sgn = kind == WaveKind::Splus ? 1.0 : -1.0;
  const double ex = (g.kappa - 1.0) / 2.0;
  double umg_min_std = 0.0, umg_max_std = 0.0, umg_min_lit = 0.0, umg_max_lit = 0.0;
  bool first = true;
  for (const auto& [r, y] : samples) {
    out.r.push_back(r);
    out.states.push_back(StateVector::from_vec(y));
    const double claim_p = g.A * std::pow(y[0], g.kappa) + g.p0;
    out.pressure_claim_error = std::max(
        out.pressure_claim_error, std::abs(y[1] - claim_p) / std::max(std::abs(y[1]), 1e-300));
    if (g.kappa != 1.0) {
      const double pref = 2.0 * std::sqrt(g.kappa * g.A) / (g.kappa - 1.0);
      const double g_std = sgn * pref * std::pow(y[0], ex);
      const double g_lit = sgn * (2.0 / (g.kappa - 1.0)) *
                           std::sqrt(g.kappa * g.A * std::pow(y[0], ex));
      const double ds = y[2] - g_std, dl = y[2] - g_lit;
      if (first) {
        umg_min_std = umg_max_std = ds;
        umg_min_lit = umg_max_lit = dl;
        first = false;
      } else {
        umg_min_std = std::min(umg_min_std, ds);
        umg_max_std = std::max(umg_max_std, ds);
        umg_min_lit = std::min(umg_min_lit, dl);
        umg_max_lit = std::max(umg_max_lit, dl);
      }
    }
  }
  out.u_reading_standard = umg_max_std - umg_min_std;
  out.u_reading_literal = umg_max_lit - umg_min_lit;
  return out;
}

// ---------------------------------------------------------------------------
// double wave, printed form

/// Printed S+S- double wave:
/// (rho, p, u) = (A e^{r1+r2}, kappa A e^{r1+r2} + p0, sqrt(kappa)(r1-r2) + u0).
inline StateVector double_wave_state(double r1, double r2, const GasParameters& g) {
  const double rho = g.A * std::exp(r1 + r2);
  return {rho, g.kappa * rho + g.p0, std::sqrt(g.kappa) * (r1 - r2) + g.u0};
}

/// Residuals of the tangency relations d f / d r^s = h_s gamma_s(f) for the
/// printed double wave, with h_s = (kappa p / rho)^(-1/2). The printed formulas
/// do not satisfy these relations in general; this evaluator measures by how much.
struct DoubleWaveTangency {
  double residual_r1 = 0.0;
  double residual_r2 = 0.0;
};

inline DoubleWaveTangency double_wave_tangency(double r1, double r2, const GasParameters& g) {
  const StateVector f = double_wave_state(r1, r2, g);
  const double rho = f.rho(), p = f.p();
  const double sk = std::sqrt(g.kappa);
  const Vec3 df1{{rho, g.kappa * rho, sk}};
  const Vec3 df2{{rho, g.kappa * rho, -sk}};
  const double c = std::sqrt(g.kappa * p / rho);
  const Vec3 hgp{{rho / c, g.kappa * p / c, 1.0}};
  const Vec3 hgm{{rho / c, g.kappa * p / c, -1.0}};
  DoubleWaveTangency t;
  t.residual_r1 = norm(df1 - hgp) / std::max(norm(hgp), 1e-300);
  t.residual_r2 = norm(df2 - hgm) / std::max(norm(hgm), 1e-300);
  return t;
}

// ---------------------------------------------------------------------------
// reduced matrix (kappa = 3 is the reference case; general kappa carries a warning)

/// The triple product
///   [[1/2,1/2,0],[1/(2h2),-1/(2h2),0],[0,0,1/h0]] diag(v+,v-,v0)
///   [[1,h2,0],[1,-h2,0],[0,0,h0]]
/// with h2 = (rho/p)^(1/2), h0 = rho.
inline Mat3 reduced_matrix(const StateVector& v, const GasParameters& g) {
  const double h2 = std::sqrt(v.rho() / v.p());
  const double h0 = v.rho();
  const double c = std::sqrt(g.kappa * v.p() / v.rho());
  const double vp = v.u() + c, vm = v.u() - c, v0 = v.u();
  Mat3 P, D, Q;
  P[0] = {0.5, 0.5, 0.0};
  P[1] = {0.5 / h2, -0.5 / h2, 0.0};
  P[2] = {0.0, 0.0, 1.0 / h0};
  D[0] = {vp, 0.0, 0.0};
  D[1] = {0.0, vm, 0.0};
  D[2] = {0.0, 0.0, v0};
  Q[0] = {1.0, h2, 0.0};
  Q[1] = {1.0, -h2, 0.0};
  Q[2] = {0.0, 0.0, h0};
  return P * (D * Q);
}

/// Closed form of the same product: [[u, sqrt(k), 0], [sqrt(k) p/rho, u, 0], [0,0,u]].
inline Mat3 reduced_matrix_closed_form(const StateVector& v, const GasParameters& g) {
  const double sk = std::sqrt(g.kappa);
  Mat3 R;
  R[0] = {v.u(), sk, 0.0};
  R[1] = {sk * v.p() / v.rho(), v.u(), 0.0};
  R[2] = {0.0, 0.0, v.u()};
  return R;
}

inline bool reduced_matrix_kappa_warning(const GasParameters& g) {
  return std::abs(g.kappa - 3.0) > 1e-12;
}

/// Analytic eigen-structure of the reduced matrix, ordered (u+c, u, u-c).
inline EulerDecomposition reduced_decomposition(const Vec3& tvars, const GasParameters& g,
                                                const Vec3& mapped_state) {
  const double rho = mapped_state[0], p = mapped_state[1], u = mapped_state[2];
  (void)tvars;
  const double k = g.kappa;
  const double c = std::sqrt(k * p / rho);
  const double sk = std::sqrt(k);
  EulerDecomposition d;
  d.lambda = {u + c, u, u - c};
  d.right = {Vec3{{sk, c, 0.0}}, Vec3{{0.0, 0.0, 1.0}}, Vec3{{sk, -c, 0.0}}};
  d.left = {Vec3{{0.5 / sk, 0.5 / c, 0.0}}, Vec3{{0.0, 0.0, 1.0}},
            Vec3{{0.5 / sk, -0.5 / c, 0.0}}};
  return d;
}

}  // namespace wavelab
