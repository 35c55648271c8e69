#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wavelab {

struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
  }
  friend Vec3 operator*(double s, const Vec3& a) {
    return {{s * a[0], s * a[1], s * a[2]}};
  }
  friend Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend Vec3 operator/(const Vec3& a, double s) { return (1.0 / s) * a; }
  Vec3& operator+=(const Vec3& b) { return *this = *this + b; }
  Vec3& operator-=(const Vec3& b) { return *this = *this - b; }
  friend Vec3 operator-(const Vec3& a) { return {{-a[0], -a[1], -a[2]}}; }
};

/// 3-component value over any scalar-like type (double or dual numbers).
template <class T>
using V3 = std::array<T, 3>;

inline V3<double> to_v3(const Vec3& v) { return v.c; }
inline Vec3 to_vec3(const V3<double>& v) { return {v}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {{a[1] * b[2] - a[2] * b[1],
           a[2] * b[0] - a[0] * b[2],
           a[0] * b[1] - a[1] * b[0]}};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
  return a / n;
}

/// 3x3 matrix, row-major.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
    return r;
  }
  static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      r.m[i][0] = a[i];
      r.m[i][1] = b[i];
      r.m[i][2] = c[i];
    }
    return r;
  }
  static Mat3 from_rows(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 r;
    r.m[0] = a.c;
    r.m[1] = b.c;
    r.m[2] = c.c;
    return r;
  }

  std::array<double, 3>& operator[](int i) { return m[i]; }
  const std::array<double, 3>& operator[](int i) const { return m[i]; }

  Vec3 row(int i) const { return {m[i]}; }
  Vec3 col(int j) const { return {{m[0][j], m[1][j], m[2][j]}}; }

  friend Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
  }
  friend Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
  }
  friend Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = s * a[i][j];
    return r;
  }
  friend Vec3 operator*(const Mat3& a, const Vec3& x) {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
      r[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2];
    return r;
  }
  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
  }
};

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

inline double det(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  if (d == 0.0) throw std::domain_error("singular 3x3 matrix");
  Mat3 r;
  r[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
  r[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
  r[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
  r[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
  r[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
  r[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
  r[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
  r[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
  r[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
  return r;
}

inline double max_abs(const Mat3& a) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a[i][j]));
  return r;
}

/// Thin SVD of a 3 x k matrix (k <= 3) given by columns, via one-sided Jacobi.
struct Svd3 {
  int k = 0;
  std::array<Vec3, 3> u{};              // left singular vectors (columns)
  std::array<double, 3> sigma{};        // singular values, descending
  std::array<std::array<double, 3>, 3> v{};  // right singular vectors, v[j] = column j
};

inline Svd3 svd_columns(const std::vector<Vec3>& cols) {
  const int k = static_cast<int>(cols.size());
  if (k < 1 || k > 3) throw std::invalid_argument("svd_columns: need 1..3 columns");
  Svd3 s;
  s.k = k;
  std::array<Vec3, 3> a{};
  for (int j = 0; j < k; ++j) a[j] = cols[j];
  std::array<std::array<double, 3>, 3> v{};
  for (int j = 0; j < k; ++j) v[j][j] = 1.0;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < k - 1; ++p) {
      for (int q = p + 1; q < k; ++q) {
        const double app = dot(a[p], a[p]);
        const double aqq = dot(a[q], a[q]);
        const double apq = dot(a[p], a[q]);
        off = std::max(off, std::abs(apq) / std::max(std::sqrt(app * aqq), 1e-300));
        if (apq == 0.0) continue;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        const Vec3 ap = a[p], aq = a[q];
        a[p] = c * ap - sn * aq;
        a[q] = sn * ap + c * aq;
        for (int i = 0; i < k; ++i) {
          const double vp = v[p][i], vq = v[q][i];
          v[p][i] = c * vp - sn * vq;
          v[q][i] = sn * vp + c * vq;
        }
      }
    }
    if (off < 1e-15) break;
  }

  std::array<int, 3> order{0, 1, 2};
  std::array<double, 3> sig{};
  for (int j = 0; j < k; ++j) sig[j] = norm(a[j]);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (sig[order[j]] > sig[order[i]]) std::swap(order[i], order[j]);

  for (int j = 0; j < k; ++j) {
    const int o = order[j];
    s.sigma[j] = sig[o];
    s.u[j] = sig[o] > 0.0 ? a[o] / sig[o] : Vec3{};
    s.v[j] = v[o];
  }
  return s;
}

/// Minimum-norm least-squares solution of [cols] x = b; singular values below
/// rel_tol * sigma_max are treated as zero. Returns coefficients and residual norm.
struct LeastSquares3 {
  std::vector<double> x;
  double residual = 0.0;
  int rank = 0;
};

inline LeastSquares3 solve_least_squares(const std::vector<Vec3>& cols, const Vec3& b,
                                         double rel_tol = 1e-12) {
  const Svd3 s = svd_columns(cols);
  const int k = s.k;
  LeastSquares3 r;
  r.x.assign(k, 0.0);
  const double cutoff = rel_tol * s.sigma[0];
  Vec3 fit{};
  for (int j = 0; j < k; ++j) {
    if (s.sigma[j] <= cutoff || s.sigma[j] == 0.0) continue;
    ++r.rank;
    const double coeff = dot(s.u[j], b) / s.sigma[j];
    for (int i = 0; i < k; ++i) r.x[i] += coeff * s.v[j][i];
  }
  for (int j = 0; j < k; ++j) fit += r.x[j] * cols[j];
  r.residual = norm(b - fit);
  return r;
}

/// Rank of a 3 x k matrix with relative singular-value threshold.
inline bool full_column_rank(const std::vector<Vec3>& cols, double rel_tol = 1e-10) {
  const Svd3 s = svd_columns(cols);
  if (s.sigma[0] == 0.0) return false;
  return s.sigma[s.k - 1] > rel_tol * s.sigma[0];
}

/// Eigen-decomposition of a real 3x3 matrix with distinct real eigenvalues.
/// lambda sorted descending; right[i] columns, left[i] rows with left_i . right_j = delta_ij.
struct Eigen3 {
  std::array<double, 3> lambda{};
  std::array<Vec3, 3> right{};
  std::array<Vec3, 3> left{};
};

inline std::array<double, 3> cubic_real_roots(double a, double b, double c) {
  // roots of x^3 + a x^2 + b x + c, all required real
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 4.0 * p * p * p + 27.0 * q * q;
  const double scale = std::max({std::abs(p) * std::abs(p) * std::abs(p), q * q, 1e-300});
  if (disc > 1e-10 * scale)
    throw std::domain_error("cubic has complex roots: matrix not hyperbolic-diagonalizable");
  std::array<double, 3> x{};
  if (p >= -1e-300) {
    // triple/near-triple root
    x.fill(-a / 3.0);
    return x;
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  double arg = 3.0 * q / (p * m);
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  for (int i = 0; i < 3; ++i)
    x[i] = m * std::cos(theta - 2.0 * M_PI * i / 3.0) - a / 3.0;
  return x;
}

inline Eigen3 eigen_decompose(const Mat3& A, double degeneracy_tol = 1e-9) {
  const double tr = A[0][0] + A[1][1] + A[2][2];
  const double m01 = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const double m02 = A[0][0] * A[2][2] - A[0][2] * A[2][0];
  const double m12 = A[1][1] * A[2][2] - A[1][2] * A[2][1];
  const double a = -tr;
  const double b = m01 + m02 + m12;
  const double c = -det(A);
  auto roots = cubic_real_roots(a, b, c);
  std::sort(roots.begin(), roots.end(), std::greater<>());

  const double scale = std::max({std::abs(roots[0]), std::abs(roots[2]), 1.0});
  for (int i = 0; i < 2; ++i)
    if (std::abs(roots[i] - roots[i + 1]) < degeneracy_tol * scale)
      throw std::domain_error("repeated eigenvalue: matrix treated as non-diagonalizable");

  Eigen3 e;
  e.lambda = roots;
  auto null_vector = [](const Mat3& B) {
    // null space of a rank-2 matrix: largest cross product of row pairs
    const Vec3 r0 = B.row(0), r1 = B.row(1), r2 = B.row(2);
    const Vec3 c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
    const double n01 = norm(c01), n02 = norm(c02), n12 = norm(c12);
    Vec3 best = c01;
    double bn = n01;
    if (n02 > bn) { best = c02; bn = n02; }
    if (n12 > bn) { best = c12; bn = n12; }
    if (bn == 0.0) throw std::domain_error("eigenvector extraction failed");
    return best / bn;
  };
  for (int i = 0; i < 3; ++i) {
    Mat3 B = A;
    for (int j = 0; j < 3; ++j) B[j][j] -= e.lambda[i];
    e.right[i] = null_vector(B);
    e.left[i] = null_vector(transpose(B));
    const double s = dot(e.left[i], e.right[i]);
    if (std::abs(s) < 1e-13) throw std::domain_error("defective eigenpair");
    e.left[i] = e.left[i] / s;
  }
  return e;
}

/// Dense least squares for an m x n system (m >= n, small n) by Householder QR
/// with column equilibration. A is row-major.
struct DenseLeastSquares {
  std::vector<double> x;
  double residual = 0.0;
};

inline DenseLeastSquares dense_least_squares(int m, int n, std::vector<double> A,
                                             std::vector<double> b,
                                             double rank_tol = 1e-12) {
  if (m < n) throw std::invalid_argument("dense_least_squares: need m >= n");
  std::vector<double> colscale(n, 1.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += A[i * n + j] * A[i * n + j];
    s = std::sqrt(s);
    if (s > 0.0) {
      colscale[j] = s;
      for (int i = 0; i < m; ++i) A[i * n + j] /= s;
    }
  }
  // Householder QR, applying reflections to b as we go
  std::vector<double> rdiag(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double nrm = 0.0;
    for (int i = j; i < m; ++i) nrm += A[i * n + j] * A[i * n + j];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) { rdiag[j] = 0.0; continue; }
    if (A[j * n + j] < 0.0) nrm = -nrm;
    for (int i = j; i < m; ++i) A[i * n + j] /= nrm;
    A[j * n + j] += 1.0;
    for (int kk = j + 1; kk < n; ++kk) {
      double s = 0.0;
      for (int i = j; i < m; ++i) s += A[i * n + j] * A[i * n + kk];
      s /= A[j * n + j];
      for (int i = j; i < m; ++i) A[i * n + kk] -= s * A[i * n + j];
    }
    double s = 0.0;
    for (int i = j; i < m; ++i) s += A[i * n + j] * b[i];
    s /= A[j * n + j];
    for (int i = j; i < m; ++i) b[i] -= s * A[i * n + j];
    rdiag[j] = -nrm;
  }
  DenseLeastSquares out;
  out.x.assign(n, 0.0);
  double rmax = 0.0;
  for (int j = 0; j < n; ++j) rmax = std::max(rmax, std::abs(rdiag[j]));
  for (int j = n - 1; j >= 0; --j) {
    if (std::abs(rdiag[j]) <= rank_tol * std::max(rmax, 1e-300)) {
      out.x[j] = 0.0;
      continue;
    }
    double s = b[j];
    for (int kk = j + 1; kk < n; ++kk) s -= A[j * n + kk] * out.x[kk];
    out.x[j] = s / rdiag[j];
  }
  double rss = 0.0;
  for (int i = n; i < m; ++i) rss += b[i] * b[i];
  out.residual = std::sqrt(rss);
  for (int j = 0; j < n; ++j) out.x[j] /= colscale[j];
  return out;
}

/// Rank of a list of length-d coefficient vectors via modified Gram-Schmidt.
inline int span_rank(const std::vector<std::vector<double>>& vecs, double rel_tol = 1e-8) {
  std::vector<std::vector<double>> basis;
  double scale = 0.0;
  for (const auto& v : vecs) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    scale = std::max(scale, std::sqrt(n2));
  }
  if (scale == 0.0) return 0;
  for (auto v : vecs) {
    for (const auto& e : basis) {
      double proj = 0.0;
      for (size_t i = 0; i < v.size(); ++i) proj += v[i] * e[i];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= proj * e[i];
    }
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    const double n = std::sqrt(n2);
    if (n > rel_tol * scale) {
      for (double& x : v) x /= n;
      basis.push_back(std::move(v));
    }
  }
  return static_cast<int>(basis.size());
}

}  // namespace wavelab
