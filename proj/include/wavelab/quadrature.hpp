#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wavelab {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    g.weights[n - 1 - i] = g.weights[i];
  }
  return g;
}

/// Polynomial (Neville) extrapolation of f(h) to h = 0.
inline double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& f) {
  if (h.size() != f.size() || h.empty())
    throw std::invalid_argument("extrapolate_to_zero: size mismatch");
  std::vector<double> t = f;
  const int n = static_cast<int>(h.size());
  for (int m = 1; m < n; ++m)
    for (int i = 0; i < n - m; ++i)
      t[i] = t[i + 1] + (t[i + 1] - t[i]) * h[i + m] / (h[i] - h[i + m]);
  return t[0];
}

}  // namespace wavelab
