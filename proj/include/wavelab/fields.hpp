#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wavelab/dual.hpp"
#include "wavelab/linalg.hpp"
#include "wavelab/state.hpp"

namespace wavelab {

namespace detail {

inline constexpr double kScaleVanishTol = 1e-14;

/// Evaluation backend of a vector field. eval1/eval2 operate on dual-number
/// states; exact_order reports the highest derivative level that is exact
/// (2 analytic, 1 bracket of analytic fields, 0 finite-difference fallback).
struct FieldImpl {
  virtual ~FieldImpl() = default;
  virtual V3<double> eval0(const V3<double>& v) const = 0;
  virtual V3<D1> eval1(const V3<D1>& v) const = 0;
  virtual V3<D2> eval2(const V3<D2>& v) const = 0;
  virtual int exact_order() const = 0;
  virtual std::string label() const = 0;
};

struct ScalarImpl {
  virtual ~ScalarImpl() = default;
  virtual double eval0(const V3<double>& v) const = 0;
  virtual D1 eval1(const V3<D1>& v) const = 0;
  virtual D2 eval2(const V3<D2>& v) const = 0;
  virtual int exact_order() const = 0;
  virtual std::string label() const = 0;
};

template <class F>
struct AnalyticFieldImpl final : FieldImpl {
  F f;
  std::string name;
  AnalyticFieldImpl(F fn, std::string label) : f(std::move(fn)), name(std::move(label)) {}
  V3<double> eval0(const V3<double>& v) const override { return f(v); }
  V3<D1> eval1(const V3<D1>& v) const override { return f(v); }
  V3<D2> eval2(const V3<D2>& v) const override { return f(v); }
  int exact_order() const override { return 2; }
  std::string label() const override { return name; }
};

template <class F>
struct ValueOnlyFieldImpl;

template <class F>
struct AnalyticScalarImpl final : ScalarImpl {
  F f;
  std::string name;
  AnalyticScalarImpl(F fn, std::string label) : f(std::move(fn)), name(std::move(label)) {}
  double eval0(const V3<double>& v) const override { return f(v); }
  D1 eval1(const V3<D1>& v) const override { return f(v); }
  D2 eval2(const V3<D2>& v) const override { return f(v); }
  int exact_order() const override { return 2; }
  std::string label() const override { return name; }
};

}  // namespace detail

class VectorField;
template <class T>
V3<T> eval_field(const VectorField& X, const V3<T>& v);

/// Scalar field on state space with exact dual-number derivatives.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const detail::ScalarImpl> impl) : impl_(std::move(impl)) {}

  template <class F>
  static ScalarField analytic(std::string label, F f) {
    return ScalarField(std::make_shared<detail::AnalyticScalarImpl<F>>(std::move(f), std::move(label)));
  }
  static ScalarField constant(double c, std::string label = "const") {
    return analytic(std::move(label), [c](const auto& v) {
      using T = std::decay_t<decltype(v[0])>;
      (void)v;
      return T(c);
    });
  }
  /// rho^e
  static ScalarField rho_power(double e);

  double value(const StateVector& s) const { return impl_->eval0(to_v3(s.vec())); }
  Vec3 gradient(const StateVector& s) const {
    V3<D1> in;
    for (int j = 0; j < 3; ++j) in[j] = D1::seeded(s.vec()[j], j);
    const D1 out = impl_->eval1(in);
    return {out.d};
  }
  int exact_order() const { return impl_->exact_order(); }
  std::string label() const { return impl_ ? impl_->label() : std::string(); }

  double eval_any(const V3<double>& v) const { return impl_->eval0(v); }
  D1 eval_any(const V3<D1>& v) const { return impl_->eval1(v); }
  D2 eval_any(const V3<D2>& v) const { return impl_->eval2(v); }
  bool valid() const { return impl_ != nullptr; }

 private:
  std::shared_ptr<const detail::ScalarImpl> impl_;
};

inline ScalarField ScalarField::rho_power(double e) {
  return analytic("rho^" + std::to_string(e), [e](const auto& v) { return pow(v[0], e); });
}

/// 1/h, valid where h does not vanish.
inline ScalarField reciprocal(const ScalarField& h) {
  return ScalarField::analytic("1/(" + h.label() + ")", [h](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    return T(1.0) / h.eval_any(v);
  });
}

inline ScalarField product(const ScalarField& a, const ScalarField& b) {
  return ScalarField::analytic(a.label() + "*" + b.label(), [a, b](const auto& v) {
    return a.eval_any(v) * b.eval_any(v);
  });
}

/// Analytic vector field on the open state space rho, p > 0. Values and
/// Jacobians are exact for analytic fields; derived fields (brackets) report
/// their derivative exactness through jacobian_exact().
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

  template <class F>
  static VectorField analytic(std::string label, F f) {
    return VectorField(std::make_shared<detail::AnalyticFieldImpl<F>>(std::move(f), std::move(label)));
  }
  static VectorField constant(const Vec3& c, std::string label = "const") {
    return analytic(std::move(label), [c](const auto& v) {
      using T = std::decay_t<decltype(v[0])>;
      (void)v;
      return V3<T>{T(c[0]), T(c[1]), T(c[2])};
    });
  }
  static VectorField zero() { return constant({}, "0"); }
  /// user field from plain values; Jacobians by central differences, flagged
  /// approximate through jacobian_exact()
  template <class F>
  static VectorField from_values(std::string label, F f) {
    return VectorField(
        std::make_shared<detail::ValueOnlyFieldImpl<F>>(std::move(f), std::move(label)));
  }

  Vec3 value(const StateVector& s) const { return to_vec3(impl_->eval0(to_v3(s.vec()))); }

  Mat3 jacobian(const StateVector& s) const {
    V3<D1> in;
    for (int j = 0; j < 3; ++j) in[j] = D1::seeded(s.vec()[j], j);
    const V3<D1> out = impl_->eval1(in);
    Mat3 J;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J[i][j] = out[i].d[j];
    return J;
  }

  int exact_order() const { return impl_->exact_order(); }
  bool jacobian_exact() const { return exact_order() >= 1; }
  std::string label() const { return impl_ ? impl_->label() : std::string(); }
  bool valid() const { return impl_ != nullptr; }

  V3<double> eval_any(const V3<double>& v) const { return impl_->eval0(v); }
  V3<D1> eval_any(const V3<D1>& v) const { return impl_->eval1(v); }
  V3<D2> eval_any(const V3<D2>& v) const { return impl_->eval2(v); }

  const detail::FieldImpl& impl() const { return *impl_; }
  std::shared_ptr<const detail::FieldImpl> impl_ptr() const { return impl_; }

 private:
  std::shared_ptr<const detail::FieldImpl> impl_;
};

template <class T>
V3<T> eval_field(const VectorField& X, const V3<T>& v) {
  return X.eval_any(v);
}

namespace detail {

/// Central-difference Jacobian of a raw callable (step 1e-6 * coordinate scale).
template <class F>
Mat3 fd_jacobian_of(const F& f, const V3<double>& x, double step = 1e-6) {
  Mat3 J;
  for (int j = 0; j < 3; ++j) {
    const double h = step * std::max(1.0, std::abs(x[j]));
    V3<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const V3<double> fp = f(xp), fm = f(xm);
    for (int i = 0; i < 3; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

/// Field given only by values; derivatives fall back to central differences
/// (step 1e-6 x coordinate scale) and are reported as approximate.
template <class F>
struct ValueOnlyFieldImpl final : FieldImpl {
  F f;
  std::string name;
  ValueOnlyFieldImpl(F fn, std::string label) : f(std::move(fn)), name(std::move(label)) {}

  V3<double> eval0(const V3<double>& v) const override { return f(v); }
  V3<D1> eval1(const V3<D1>& v) const override {
    V3<double> x;
    for (int j = 0; j < 3; ++j) x[j] = v[j].v;
    const V3<double> y0 = f(x);
    const Mat3 J = fd_jacobian_of(f, x);
    V3<D1> out;
    for (int i = 0; i < 3; ++i) {
      out[i].v = y0[i];
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) s += J[i][j] * v[j].d[k];
        out[i].d[k] = s;
      }
    }
    return out;
  }
  V3<D2> eval2(const V3<D2>&) const override {
    throw std::logic_error("second-order evaluation unavailable for value-only field " + name);
  }
  int exact_order() const override { return 0; }
  std::string label() const override { return name; }
};

struct BracketImpl final : FieldImpl {
  std::shared_ptr<const FieldImpl> X, Y;
  BracketImpl(std::shared_ptr<const FieldImpl> x, std::shared_ptr<const FieldImpl> y)
      : X(std::move(x)), Y(std::move(y)) {}

  V3<double> eval0(const V3<double>& v) const override {
    V3<D1> in;
    for (int j = 0; j < 3; ++j) in[j] = D1::seeded(v[j], j);
    const V3<D1> xo = X->eval1(in);
    const V3<D1> yo = Y->eval1(in);
    V3<double> out;
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += yo[i].d[j] * xo[j].v - xo[i].d[j] * yo[j].v;
      out[i] = s;
    }
    return out;
  }

  V3<D1> eval1(const V3<D1>& v) const override {
    if (X->exact_order() >= 2 && Y->exact_order() >= 2) {
      // lift: outer dual level tracks v, fresh inner-seeded directions give Jacobians
      V3<D2> q;
      for (int j = 0; j < 3; ++j) {
        q[j].v = v[j];
        for (int k = 0; k < 3; ++k) q[j].d[k] = D1(j == k ? 1.0 : 0.0);
      }
      const V3<D2> xo = X->eval2(q);
      const V3<D2> yo = Y->eval2(q);
      V3<D1> out;
      for (int i = 0; i < 3; ++i) {
        D1 s(0.0);
        for (int j = 0; j < 3; ++j) s += yo[i].d[j] * xo[j].v - xo[i].d[j] * yo[j].v;
        out[i] = s;
      }
      return out;
    }
    // finite-difference fallback for the derivative part (flagged via exact_order)
    V3<double> x;
    for (int j = 0; j < 3; ++j) x[j] = v[j].v;
    const V3<double> y0 = eval0(x);
    const Mat3 J = fd_jacobian_of([this](const V3<double>& p) { return eval0(p); }, x);
    V3<D1> out;
    for (int i = 0; i < 3; ++i) {
      out[i].v = y0[i];
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) s += J[i][j] * v[j].d[k];
        out[i].d[k] = s;
      }
    }
    return out;
  }

  V3<D2> eval2(const V3<D2>&) const override {
    throw std::logic_error("second-order evaluation unavailable for bracket field " + label());
  }

  int exact_order() const override {
    return (X->exact_order() >= 2 && Y->exact_order() >= 2) ? 1 : 0;
  }
  std::string label() const override { return "[" + X->label() + "," + Y->label() + "]"; }
};

struct ScaledImpl final : FieldImpl {
  ScalarField h;
  std::shared_ptr<const FieldImpl> X;
  ScaledImpl(ScalarField hh, std::shared_ptr<const FieldImpl> x) : h(std::move(hh)), X(std::move(x)) {}

  template <class T>
  V3<T> apply(const V3<T>& v) const {
    const T hv = h.eval_any(v);
    if (std::abs(value_of(hv)) < kScaleVanishTol)
      throw invalid_state("scale factor " + h.label() + " vanishes at evaluation point");
    const V3<T> xv = X_eval(v);
    return {hv * xv[0], hv * xv[1], hv * xv[2]};
  }
  V3<double> X_eval(const V3<double>& v) const { return X->eval0(v); }
  V3<D1> X_eval(const V3<D1>& v) const { return X->eval1(v); }
  V3<D2> X_eval(const V3<D2>& v) const { return X->eval2(v); }

  V3<double> eval0(const V3<double>& v) const override { return apply(v); }
  V3<D1> eval1(const V3<D1>& v) const override { return apply(v); }
  V3<D2> eval2(const V3<D2>& v) const override { return apply(v); }
  int exact_order() const override { return std::min(h.exact_order(), X->exact_order()); }
  std::string label() const override { return "(" + h.label() + ")*" + X->label(); }
};

struct LinCombImpl final : FieldImpl {
  std::vector<std::pair<double, std::shared_ptr<const FieldImpl>>> terms;
  std::string name;

  template <class T>
  V3<T> apply(const V3<T>& v) const {
    V3<T> out{T(0.0), T(0.0), T(0.0)};
    for (const auto& [c, f] : terms) {
      const V3<T> fv = eval_term(*f, v);
      for (int i = 0; i < 3; ++i) out[i] += T(c) * fv[i];
    }
    return out;
  }
  static V3<double> eval_term(const FieldImpl& f, const V3<double>& v) { return f.eval0(v); }
  static V3<D1> eval_term(const FieldImpl& f, const V3<D1>& v) { return f.eval1(v); }
  static V3<D2> eval_term(const FieldImpl& f, const V3<D2>& v) { return f.eval2(v); }

  V3<double> eval0(const V3<double>& v) const override { return apply(v); }
  V3<D1> eval1(const V3<D1>& v) const override { return apply(v); }
  V3<D2> eval2(const V3<D2>& v) const override { return apply(v); }
  int exact_order() const override {
    int o = 2;
    for (const auto& [c, f] : terms) o = std::min(o, f->exact_order());
    return o;
  }
  std::string label() const override { return name; }
};

}  // namespace detail

/// [X,Y](v) = JY(v) X(v) - JX(v) Y(v). The bracket's own Jacobian comes from
/// nested dual-number differentiation when both arguments are analytic, and
/// from a central-difference fallback otherwise (jacobian_exact() reports which).
inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  return VectorField(std::make_shared<detail::BracketImpl>(X.impl_ptr(), Y.impl_ptr()));
}

/// Pointwise product h X with product-rule Jacobian. Evaluation reports an
/// error if h vanishes at the requested point.
inline VectorField scale_field(const ScalarField& h, const VectorField& X) {
  return VectorField(std::make_shared<detail::ScaledImpl>(h, X.impl_ptr()));
}

inline VectorField linear_combination(const std::vector<std::pair<double, VectorField>>& terms,
                                      std::string label) {
  auto impl = std::make_shared<detail::LinCombImpl>();
  impl->name = std::move(label);
  for (const auto& [c, f] : terms) impl->terms.emplace_back(c, f.impl_ptr());
  return VectorField(impl);
}

/// Cross product field X x Y (state space treated as Cartesian R^3).
inline VectorField cross_field(const VectorField& X, const VectorField& Y) {
  return VectorField::analytic(X.label() + "x" + Y.label(), [X, Y](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    const auto a = X.eval_any(v);
    const auto b = Y.eval_any(v);
    return V3<T>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0]};
  });
}

/// curl of a field in the (rho, p, u) coordinates, from its Jacobian.
inline Vec3 curl(const VectorField& X, const StateVector& s) {
  const Mat3 J = X.jacobian(s);
  return {{J[2][1] - J[1][2], J[0][2] - J[2][0], J[1][0] - J[0][1]}};
}

/// Directional derivative of a scalar along a field: (X s)(v) = grad s . X.
inline double derive_along(const VectorField& X, const ScalarField& s, const StateVector& v) {
  return dot(s.gradient(v), X.value(v));
}

/// True iff the field values at v have full column rank
/// (singular values above 1e-10 of the largest).
inline bool wedge_independent(const std::vector<VectorField>& family, const StateVector& v,
                              double rel_tol = 1e-10) {
  if (family.empty() || family.size() > 3)
    throw std::invalid_argument("wedge_independent: family size must be 1..3");
  std::vector<Vec3> cols;
  cols.reserve(family.size());
  for (const auto& f : family) cols.push_back(f.value(v));
  return full_column_rank(cols, rel_tol);
}

/// Least-squares coefficients of a vector in the span of basis values at one
/// state, with the Euclidean norm of the orthogonal remainder. Rank-deficient
/// bases get the minimum-norm solution.
struct CommutatorExpansion {
  std::vector<double> coefficients;
  double residual = 0.0;
  StateVector point;
};

inline CommutatorExpansion expand_in_span(const Vec3& target,
                                          const std::vector<VectorField>& basis,
                                          const StateVector& v) {
  if (basis.empty() || basis.size() > 3)
    throw std::invalid_argument("expand_in_span: basis size must be 1..3");
  std::vector<Vec3> cols;
  cols.reserve(basis.size());
  for (const auto& f : basis) cols.push_back(f.value(v));
  const LeastSquares3 ls = solve_least_squares(cols, target);
  return {ls.x, ls.residual, v};
}

inline CommutatorExpansion expand_in_span(const VectorField& target,
                                          const std::vector<VectorField>& basis,
                                          const StateVector& v) {
  return expand_in_span(target.value(v), basis, v);
}

/// Relative deviation between the analytic Jacobian and central differences of
/// the field values; the VectorField self-consistency check.
inline double jacobian_self_consistency(const VectorField& X, const StateVector& v,
                                        double step = 1e-6) {
  const Mat3 J = X.jacobian(v);
  const Mat3 F = detail::fd_jacobian_of(
      [&X](const V3<double>& p) { return X.eval_any(p); }, to_v3(v.vec()), step);
  const double scale = std::max(max_abs(J), 1.0);
  return max_abs(J - F) / scale;
}

}  // namespace wavelab
