#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavelab/linalg.hpp"

namespace wavelab {

class invalid_state : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class solver_halt : public std::runtime_error {
 public:
  enum class Reason { cfl_violation, positivity_loss, gradient_blowup, non_diagonalizable };
  solver_halt(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
  Reason reason;
};

/// Point v = (rho, p, u) in gas state space; rho > 0 and p > 0 enforced.
class StateVector {
 public:
  StateVector(double rho, double p, double u) : v_{{rho, p, u}} {
    if (!(rho > 0.0) || !(p > 0.0))
      throw invalid_state("state requires rho > 0 and p > 0, got rho=" +
                          std::to_string(rho) + " p=" + std::to_string(p));
  }
  static StateVector from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

  double rho() const { return v_[0]; }
  double p() const { return v_[1]; }
  double u() const { return v_[2]; }
  const Vec3& vec() const { return v_; }

 private:
  Vec3 v_;
};

/// Adiabatic exponent and the integration constants of the simple/double waves.
struct GasParameters {
  double kappa = 1.4;
  double A = 1.0;
  double p0 = 0.0;
  double u0 = 0.0;

  GasParameters() = default;
  GasParameters(double kappa_, double A_ = 1.0, double p0_ = 0.0, double u0_ = 0.0)
      : kappa(kappa_), A(A_), p0(p0_), u0(u0_) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!(A > 0.0)) throw std::invalid_argument("A must be positive");
  }
};

/// Deterministic state sampler: rho, p log-uniform on [rho_lo, rho_hi],
/// u uniform on [u_lo, u_hi].
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed, double rho_lo = 0.1, double rho_hi = 10.0,
                        double u_lo = -5.0, double u_hi = 5.0)
      : rng_(seed),
        log_rho_(std::log(rho_lo), std::log(rho_hi)),
        uu_(u_lo, u_hi) {}

  StateVector next() {
    const double rho = std::exp(log_rho_(rng_));
    const double p = std::exp(log_rho_(rng_));
    return {rho, p, uu_(rng_)};
  }

  std::vector<StateVector> sample(int n) {
    std::vector<StateVector> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(next());
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> log_rho_;
  std::uniform_real_distribution<double> uu_;
};

}  // namespace wavelab
