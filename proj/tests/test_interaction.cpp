#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavelab/exact.hpp"
#include "wavelab/interaction.hpp"
#include "wavelab/solver.hpp"

using namespace wavelab;

namespace {

BumpProfile bump(BumpProfile::Shape shape, double amp, double center, double width) {
  BumpProfile b;
  b.shape = shape;
  b.amplitude = amp;
  b.center = center;
  b.width = width;
  return b;
}

TimeSeries crossing_sound_waves(const GasParameters& g, int nx, double T,
                                BumpProfile::Shape shape = BumpProfile::Shape::cos2) {
  const StateVector bg(1.0, 1.0, 0.0);
  const Grid1D init = compose_initial_frame(
      -1.6, 1.6, nx, bg, g,
      {WavePatch{WaveKind::Splus, bump(shape, 0.04, -0.6, 0.22)},
       WavePatch{WaveKind::Sminus, bump(shape, 0.04, 0.6, 0.22)}});
  RunOptions opts;
  opts.convention = Convention::standard;
  return run_quasilinear(init, QuasilinearSystem::full_euler(g), T, opts);
}

}  // namespace

TEST_CASE("constant frame decomposes to zero coefficients") {
  const GasParameters g(1.4);
  Grid1D frame(-1.0, 1.0, 64, 3, GridKind::euler_state);
  for (int i = 0; i < 64; ++i) frame.set_node3(i, {{1.2, 0.9, 0.1}});
  const XiProfiles xi = decompose_gradient(frame, g);
  for (int s = 0; s < 3; ++s)
    for (double v : xi.xi[s]) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("entropic bump decomposes onto the entropic coefficient only") {
  const GasParameters g(1.4);
  const int nx = 256;
  Grid1D frame(-1.0, 1.0, nx, 3, GridKind::euler_state);
  const BumpProfile b = bump(BumpProfile::Shape::gauss, 0.3, 0.0, 0.25);
  for (int i = 0; i < nx; ++i) frame.set_node3(i, {{1.0 + b(frame.x(i)), 1.0, 0.0}});
  const XiProfiles xi = decompose_gradient(frame, g);
  for (int i = 1; i + 1 < nx; ++i) {
    const double rho_x = (frame.at(i + 1, 0) - frame.at(i - 1, 0)) / (2.0 * frame.dx());
    CHECK(xi.xi[1][i] == doctest::Approx(rho_x).epsilon(1e-10));
    CHECK(std::abs(xi.xi[0][i]) <= 1e-10);
    CHECK(std::abs(xi.xi[2][i]) <= 1e-10);
  }
}

TEST_CASE("exact acoustic wave frame decomposes onto its own family") {
  // the only cross-family content is the O(dx^2) truncation of the central
  // difference in the gradient; it vanishes at second order under refinement
  const GasParameters g(1.4);
  const StateVector bg(1.0, 1.0, 0.0);
  auto leakage = [&](int nx, double* signal) {
    const Grid1D frame = compose_initial_frame(
        -1.0, 1.0, nx, bg, g,
        {WavePatch{WaveKind::Splus, bump(BumpProfile::Shape::cos2, 0.05, 0.0, 0.3)}});
    const XiProfiles xi = decompose_gradient(frame, g);
    double max_plus = 0.0, max_other = 0.0;
    for (int i = 1; i + 1 < nx; ++i) {
      max_plus = std::max(max_plus, std::abs(xi.xi[0][i]));
      max_other = std::max({max_other, std::abs(xi.xi[1][i]), std::abs(xi.xi[2][i])});
    }
    if (signal) *signal = max_plus;
    return max_other;
  };
  double signal = 0.0;
  const double coarse = leakage(400, &signal);
  const double fine = leakage(800, nullptr);
  CHECK(signal > 0.1);
  CHECK(coarse <= 1e-4 * signal);
  CHECK(coarse / fine >= 3.0);  // second-order truncation
  CHECK(coarse / fine <= 5.5);
}

TEST_CASE("gradient consistency of a smooth run") {
  const GasParameters g(1.4);
  const TimeSeries s = crossing_sound_waves(g, 200, 0.1);
  const int mid = s.nframes() / 2;
  // first-order scheme: consistency at the discretization level, far below
  // the wave amplitude scale
  CHECK(gradient_consistency(s, mid, g, Convention::standard) <= 0.05);
}

TEST_CASE("counter-propagating sound bumps create a superposition region") {
  const GasParameters g(1.4);
  const TimeSeries s = crossing_sound_waves(g, 400, 1.1);
  DetectionParams det;
  const InteractionRegion region = interaction_region(s, g, det);
  REQUIRE_FALSE(region.empty);
  CHECK(region.t_min > 0.0);
  CHECK(region.t_max > region.t_min);
  CHECK(region.active[0]);
  CHECK(region.active[2]);

  // kinematics: the gap 1.2 closes at 2 c0, first contact near
  // (1.2 - 2 * width) / (2 c0)
  const double c0 = std::sqrt(1.4);
  const double expected_contact = (1.2 - 2.0 * 0.22) / (2.0 * c0);
  CHECK(region.t_min == doctest::Approx(expected_contact).epsilon(0.35));
}

TEST_CASE("a single wave yields an empty region") {
  const GasParameters g(1.4);
  const StateVector bg(1.0, 1.0, 0.0);
  const Grid1D init = compose_initial_frame(
      -1.6, 1.6, 300, bg, g,
      {WavePatch{WaveKind::Splus, bump(BumpProfile::Shape::cos2, 0.04, -0.5, 0.2)}});
  RunOptions opts;
  opts.convention = Convention::standard;
  const TimeSeries s = run_quasilinear(init, QuasilinearSystem::full_euler(g), 0.6, opts);
  DetectionParams det;
  const InteractionRegion region = interaction_region(s, g, det);
  CHECK(region.empty);
  const WaveSets sets = classify_waves(s, g, region, det);
  CHECK(sets.entering.empty());
  CHECK(sets.leaving.empty());
  CHECK(interaction_index(sets).index == 0);
}

TEST_CASE("elastic S+S- crossing: same kinds enter and leave, index zero") {
  const GasParameters g(1.4);
  const TimeSeries s = crossing_sound_waves(g, 400, 1.1);
  DetectionParams det;
  const InteractionRegion region = interaction_region(s, g, det);
  REQUIRE_FALSE(region.empty);
  const WaveSets sets = classify_waves(s, g, region, det);

  auto has = [](const std::vector<WaveKind>& ks, WaveKind k) {
    for (auto kk : ks)
      if (kk == k) return true;
    return false;
  };
  CHECK(has(sets.entering, WaveKind::Splus));
  CHECK(has(sets.entering, WaveKind::Sminus));
  CHECK(has(sets.leaving, WaveKind::Splus));
  CHECK(has(sets.leaving, WaveKind::Sminus));
  const IndexResult idx = interaction_index(sets);
  CHECK_FALSE(idx.detection_error);
  CHECK(idx.index == 0);
  CHECK(elasticity_verdict(idx.index) == Elasticity::elastic);
}

TEST_CASE("acoustic-entropic crossing produces a third wave, kappa = 3") {
  const GasParameters g(3.0);
  const StateVector bg(1.0, 1.0, 0.0);
  const Grid1D init = compose_initial_frame(
      -1.8, 1.8, 400, bg, g,
      {WavePatch{WaveKind::Splus, bump(BumpProfile::Shape::cos2, 0.05, -0.85, 0.25)},
       WavePatch{WaveKind::E, bump(BumpProfile::Shape::cos2, 0.45, 0.25, 0.18)}});
  RunOptions opts;
  opts.convention = Convention::standard;
  const TimeSeries s = run_quasilinear(init, QuasilinearSystem::full_euler(g), 0.95, opts);
  DetectionParams det;
  const InteractionRegion region = interaction_region(s, g, det);
  REQUIRE_FALSE(region.empty);
  CHECK(region.t_min > 0.0);

  const WaveSets sets = classify_waves(s, g, region, det);
  auto has = [](const std::vector<WaveKind>& ks, WaveKind k) {
    for (auto kk : ks)
      if (kk == k) return true;
    return false;
  };
  CHECK(has(sets.entering, WaveKind::Splus));
  CHECK(has(sets.entering, WaveKind::E));
  CHECK_FALSE(has(sets.entering, WaveKind::Sminus));
  CHECK(has(sets.leaving, WaveKind::Sminus));  // the produced wave
  const IndexResult idx = interaction_index(sets);
  CHECK_FALSE(idx.detection_error);
  CHECK(idx.index >= 1);
  CHECK(elasticity_verdict(idx.index) == Elasticity::non_elastic);
}

TEST_CASE("index arithmetic and verdicts") {
  WaveSets sets;
  sets.entering = {WaveKind::Splus, WaveKind::Sminus};
  sets.leaving = {WaveKind::Splus, WaveKind::Sminus};
  CHECK(interaction_index(sets).index == 0);
  CHECK(elasticity_verdict(0) == Elasticity::elastic);

  sets.entering = {WaveKind::Splus, WaveKind::E};
  sets.leaving = {WaveKind::Splus, WaveKind::E, WaveKind::Sminus};
  CHECK(interaction_index(sets).index == 1);
  CHECK(elasticity_verdict(1) == Elasticity::non_elastic);
  CHECK(elasticity_verdict(2) == Elasticity::non_elastic);

  sets.entering = {WaveKind::Splus, WaveKind::E};
  sets.leaving = {WaveKind::Splus};
  const IndexResult bad = interaction_index(sets);
  CHECK(bad.detection_error);
  CHECK_THROWS_AS(elasticity_verdict(-1), std::invalid_argument);
}

TEST_CASE("verdict is stable under a uniform space-time stretch") {
  const GasParameters g(1.4);
  // stretch x by 2 (and T by 2): same physics on a dilated lattice
  const StateVector bg(1.0, 1.0, 0.0);
  const Grid1D init = compose_initial_frame(
      -3.2, 3.2, 400, bg, g,
      {WavePatch{WaveKind::Splus, bump(BumpProfile::Shape::cos2, 0.04, -1.2, 0.44)},
       WavePatch{WaveKind::Sminus, bump(BumpProfile::Shape::cos2, 0.04, 1.2, 0.44)}});
  RunOptions opts;
  opts.convention = Convention::standard;
  const TimeSeries s = run_quasilinear(init, QuasilinearSystem::full_euler(g), 2.2, opts);
  DetectionParams det;
  const InteractionRegion region = interaction_region(s, g, det);
  REQUIRE_FALSE(region.empty);
  const WaveSets sets = classify_waves(s, g, region, det);
  const IndexResult idx = interaction_index(sets);
  CHECK_FALSE(idx.detection_error);
  CHECK(idx.index == 0);
}

TEST_CASE("support intervals are disjoint and sorted") {
  const GasParameters g(1.4);
  const TimeSeries s = crossing_sound_waves(g, 300, 0.5);
  std::vector<XiProfiles> xi;
  for (const auto& f : s.frames) xi.push_back(decompose_gradient(f, g));
  double m = 0.0;
  for (const auto& p : xi)
    for (double v : p.xi[0]) m = std::max(m, std::abs(v));
  const WaveSupport sup = support_of(s, xi, WaveKind::Splus, 0.02 * m);
  for (const auto& frame_ivs : sup.intervals) {
    for (size_t k = 0; k + 1 < frame_ivs.size(); ++k) {
      CHECK(frame_ivs[k].second < frame_ivs[k + 1].first);
      CHECK(frame_ivs[k].first <= frame_ivs[k].second);
    }
  }
}
