#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/euler.hpp"
#include "wavelab/grid.hpp"

namespace wavelab {

/// Wave-coefficient profiles xi^s per node, ordered (S+, E, S-); at each node
/// v_x = sum_s xi^s gamma_s(v), solved through the analytic dual frame.
struct XiProfiles {
  std::array<std::vector<double>, 3> xi;
};

XiProfiles decompose_gradient(const Grid1D& frame, const GasParameters& g);

/// || v_t - sigma sum_s xi^s v_s gamma_s || at the nodes of frame `idx`,
/// v_t by central time differences between neighboring frames.
double gradient_consistency(const TimeSeries& series, int idx, const GasParameters& g,
                            Convention convention);

struct DetectionParams {
  /// support threshold as a fraction of each profile's own global max
  double threshold = 0.02;
  /// a kind participates only if its peak gradient contribution |xi^s| |gamma_s|
  /// exceeds this fraction of the largest kind's; guards against scheme-noise
  /// profiles, which sit one to two orders below this level on a 400-cell grid
  double significance = 0.004;
  /// collar half-width ((epsilon, 2 epsilon] ring) in cells and frames
  int epsilon_cells = 5;
  std::uint64_t seed = 0;
};

/// Support intervals of one wave kind, per frame.
struct WaveSupport {
  WaveKind kind;
  double threshold_abs = 0.0;  // resolved absolute threshold for this kind
  std::vector<std::vector<std::pair<int, int>>> intervals;  // per frame, [lo, hi] nodes
};

WaveSupport support_of(const TimeSeries& series, const std::vector<XiProfiles>& xi,
                       WaveKind kind, double threshold_abs);

/// Space-time region where at least two active kinds have overlapping support.
struct InteractionRegion {
  bool empty = true;
  double t_min = 0.0, t_max = 0.0;
  int frame_min = -1, frame_max = -1;
  std::vector<std::vector<bool>> cells;  // [frame][node]
  std::array<double, 3> global_max{};    // per kind max |xi|
  std::array<double, 3> weighted_max{};  // per kind max |xi| |gamma|
  std::array<bool, 3> active{};          // kinds above the significance floor
  DetectionParams params;
};

InteractionRegion interaction_region(const TimeSeries& series, const GasParameters& g,
                                     const DetectionParams& params);

/// Entering/leaving wave sets by component tracking through the collar
/// A_eps = M_2eps \ M_eps.
struct WaveSets {
  std::vector<WaveKind> entering;
  std::vector<WaveKind> leaving;
  bool detection_error = false;
  std::vector<std::string> diagnostics;
};

WaveSets classify_waves(const TimeSeries& series, const GasParameters& g,
                        const InteractionRegion& region, const DetectionParams& params);

/// Gamma_M = card(leaving) - card(entering); a negative raw difference is a
/// detection failure, not a returned index.
struct IndexResult {
  int index = 0;
  bool detection_error = false;
};

IndexResult interaction_index(const WaveSets& sets);

enum class Elasticity { elastic, non_elastic };

inline Elasticity elasticity_verdict(int index) {
  if (index < 0) throw std::invalid_argument("elasticity_verdict requires index >= 0");
  return index == 0 ? Elasticity::elastic : Elasticity::non_elastic;
}

}  // namespace wavelab
