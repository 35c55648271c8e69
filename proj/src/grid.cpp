#include "wavelab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace wavelab {

Grid1D::Grid1D(double x0, double x1, int nx, int ncomp, GridKind kind)
    : x0_(x0), x1_(x1), nx_(nx), ncomp_(ncomp), kind_(kind) {
  if (nx < 16) throw std::invalid_argument("Grid1D: nx must be >= 16");
  if (!(x1 > x0)) throw std::invalid_argument("Grid1D: x1 must exceed x0");
  if (ncomp < 1 || ncomp > 3) throw std::invalid_argument("Grid1D: 1..3 components");
  dx_ = (x1 - x0) / (nx - 1);
  data_.assign(static_cast<size_t>(nx) * ncomp, 0.0);
}

void Grid1D::check_positivity() const {
  if (kind_ != GridKind::euler_state) return;
  for (int i = 0; i < nx_; ++i) {
    if (!(at(i, 0) > 0.0) || !(at(i, 1) > 0.0) || !std::isfinite(at(i, 0)) ||
        !std::isfinite(at(i, 1)) || !std::isfinite(at(i, 2)))
      throw solver_halt(solver_halt::Reason::positivity_loss,
                        "positivity lost at x = " + std::to_string(x(i)));
  }
}

}  // namespace wavelab
