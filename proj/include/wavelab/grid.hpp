#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wavelab/linalg.hpp"
#include "wavelab/state.hpp"

namespace wavelab {

/// What the per-node components mean; positivity is enforced for euler_state.
enum class GridKind { euler_state, invariants, tvars };

/// Node-centered 1D lattice including both endpoints: dx = (x1-x0)/(nx-1).
class Grid1D {
 public:
  Grid1D(double x0, double x1, int nx, int ncomp, GridKind kind);

  double x0() const { return x0_; }
  double x1() const { return x1_; }
  int nx() const { return nx_; }
  int ncomp() const { return ncomp_; }
  GridKind kind() const { return kind_; }
  double dx() const { return dx_; }
  double x(int i) const { return x0_ + i * dx_; }

  double& at(int node, int comp) { return data_[node * ncomp_ + comp]; }
  double at(int node, int comp) const { return data_[node * ncomp_ + comp]; }

  Vec3 node3(int i) const {
    return {{data_[i * 3 + 0], data_[i * 3 + 1], data_[i * 3 + 2]}};
  }
  void set_node3(int i, const Vec3& v) {
    data_[i * 3 + 0] = v[0];
    data_[i * 3 + 1] = v[1];
    data_[i * 3 + 2] = v[2];
  }

  /// Throws solver_halt on rho or p <= 0 for euler_state grids.
  void check_positivity() const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  double x0_, x1_, dx_;
  int nx_, ncomp_;
  GridKind kind_;
  std::vector<double> data_;
};

/// Frames of a time integration together with the per-step CFL numbers.
struct TimeSeries {
  std::vector<double> times;
  std::vector<Grid1D> frames;
  std::vector<double> cfl_history;

  int nframes() const { return static_cast<int>(frames.size()); }
};

}  // namespace wavelab
