#include "wavelab/interaction.hpp"

#include <algorithm>
#include <cmath>

namespace wavelab {

XiProfiles decompose_gradient(const Grid1D& frame, const GasParameters& g) {
  if (frame.ncomp() != 3 || frame.kind() != GridKind::euler_state)
    throw std::invalid_argument("decompose_gradient: euler state frame required");
  const int nx = frame.nx();
  const double dx = frame.dx();
  XiProfiles out;
  for (auto& v : out.xi) v.assign(nx, 0.0);
  for (int i = 0; i < nx; ++i) {
    Vec3 vx;
    if (i == 0)
      vx = (frame.node3(1) - frame.node3(0)) / dx;
    else if (i == nx - 1)
      vx = (frame.node3(nx - 1) - frame.node3(nx - 2)) / dx;
    else
      vx = (frame.node3(i + 1) - frame.node3(i - 1)) / (2.0 * dx);
    const auto dec = euler_decomposition(frame.node3(i), g);
    for (int s = 0; s < 3; ++s) out.xi[s][i] = dot(dec.left[s], vx);
  }
  return out;
}

double gradient_consistency(const TimeSeries& series, int idx, const GasParameters& g,
                            Convention convention) {
  if (idx <= 0 || idx + 1 >= series.nframes())
    throw std::invalid_argument("gradient_consistency: interior frame required");
  const Grid1D& fm = series.frames[idx - 1];
  const Grid1D& f0 = series.frames[idx];
  const Grid1D& fp = series.frames[idx + 1];
  const double dt = series.times[idx + 1] - series.times[idx - 1];
  const double sigma = convention_sign(convention);
  const XiProfiles xi = decompose_gradient(f0, g);
  double worst = 0.0;
  for (int i = 0; i < f0.nx(); ++i) {
    const Vec3 vt = (fp.node3(i) - fm.node3(i)) / dt;
    const auto dec = euler_decomposition(f0.node3(i), g);
    Vec3 model{};
    for (int s = 0; s < 3; ++s) model += (sigma * xi.xi[s][i] * dec.lambda[s]) * dec.right[s];
    worst = std::max(worst, norm(vt - model));
  }
  return worst;
}

namespace {

std::vector<XiProfiles> all_profiles(const TimeSeries& series, const GasParameters& g) {
  std::vector<XiProfiles> out;
  out.reserve(series.nframes());
  for (const auto& f : series.frames) out.push_back(decompose_gradient(f, g));
  return out;
}

std::vector<std::pair<int, int>> intervals_of(const std::vector<double>& xi, double thr) {
  std::vector<std::pair<int, int>> raw;
  const int n = static_cast<int>(xi.size());
  int start = -1;
  for (int i = 0; i < n; ++i) {
    const bool on = std::abs(xi[i]) >= thr;
    if (on && start < 0) start = i;
    if (!on && start >= 0) {
      raw.emplace_back(start, i - 1);
      start = -1;
    }
  }
  if (start >= 0) raw.emplace_back(start, n - 1);
  // merge gaps of up to 2 nodes, drop single-node specks
  std::vector<std::pair<int, int>> merged;
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.first - merged.back().second <= 3)
      merged.back().second = iv.second;
    else
      merged.push_back(iv);
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& iv : merged)
    if (iv.second - iv.first >= 1) out.push_back(iv);
  return out;
}

/// Chebyshev dilation of a cell mask by k frames/nodes.
std::vector<std::vector<bool>> dilate(const std::vector<std::vector<bool>>& cells, int k) {
  const int nf = static_cast<int>(cells.size());
  const int nx = nf > 0 ? static_cast<int>(cells[0].size()) : 0;
  std::vector<std::vector<bool>> horiz(nf, std::vector<bool>(nx, false));
  for (int f = 0; f < nf; ++f) {
    int until = -1;
    for (int i = 0; i < nx; ++i) {
      if (cells[f][i]) until = std::max(until, i + k);
      if (i <= until) horiz[f][i] = true;
    }
    until = nx;
    for (int i = nx - 1; i >= 0; --i) {
      if (cells[f][i]) until = std::min(until, i - k);
      if (i >= until) horiz[f][i] = true;
    }
  }
  std::vector<std::vector<bool>> out(nf, std::vector<bool>(nx, false));
  for (int i = 0; i < nx; ++i) {
    int until = -1;
    for (int f = 0; f < nf; ++f) {
      if (horiz[f][i]) until = std::max(until, f + k);
      if (f <= until) out[f][i] = true;
    }
    until = nf;
    for (int f = nf - 1; f >= 0; --f) {
      if (horiz[f][i]) until = std::min(until, f - k);
      if (f >= until) out[f][i] = true;
    }
  }
  return out;
}

struct Track {
  std::vector<int> frames;
  std::vector<std::pair<int, int>> intervals;
  bool visited_collar_then_region = false;  // entering signature
  bool visited_region_then_collar = false;  // leaving signature
  bool seen_region = false;
  bool seen_collar_before_region = false;
};

}  // namespace

WaveSupport support_of(const TimeSeries& series, const std::vector<XiProfiles>& xi,
                       WaveKind kind, double threshold_abs) {
  WaveSupport s;
  s.kind = kind;
  s.threshold_abs = threshold_abs;
  const int k = static_cast<int>(kind);
  s.intervals.reserve(series.nframes());
  for (int f = 0; f < series.nframes(); ++f)
    s.intervals.push_back(intervals_of(xi[f].xi[k], threshold_abs));
  return s;
}

InteractionRegion interaction_region(const TimeSeries& series, const GasParameters& g,
                                     const DetectionParams& params) {
  const auto xi = all_profiles(series, g);
  InteractionRegion region;
  region.params = params;
  const int nf = series.nframes();
  const int nx = nf > 0 ? series.frames[0].nx() : 0;

  for (int s = 0; s < 3; ++s) {
    double m = 0.0;
    for (const auto& prof : xi)
      for (double v : prof.xi[s]) m = std::max(m, std::abs(v));
    region.global_max[s] = m;
  }
  // significance ranks kinds by their gradient contribution |xi^s| |gamma_s|,
  // the term each kind feeds into v_x
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < nx; ++i) {
      const auto dec = euler_decomposition(series.frames[f].node3(i), g);
      for (int s = 0; s < 3; ++s)
        region.weighted_max[s] = std::max(
            region.weighted_max[s], std::abs(xi[f].xi[s][i]) * norm(dec.right[s]));
    }
  }
  const double top = std::max({region.weighted_max[0], region.weighted_max[1],
                               region.weighted_max[2]});
  for (int s = 0; s < 3; ++s)
    region.active[s] = top > 0.0 && region.weighted_max[s] >= params.significance * top;

  region.cells.assign(nf, std::vector<bool>(nx, false));
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < nx; ++i) {
      int kinds = 0;
      for (int s = 0; s < 3; ++s) {
        if (!region.active[s]) continue;
        if (std::abs(xi[f].xi[s][i]) >= params.threshold * region.global_max[s]) ++kinds;
      }
      if (kinds >= 2) {
        region.cells[f][i] = true;
        region.empty = false;
        if (region.frame_min < 0) region.frame_min = f;
        region.frame_max = f;
      }
    }
  }
  if (!region.empty) {
    region.t_min = series.times[region.frame_min];
    region.t_max = series.times[region.frame_max];
  }
  return region;
}

WaveSets classify_waves(const TimeSeries& series, const GasParameters& g,
                        const InteractionRegion& region, const DetectionParams& params) {
  WaveSets sets;
  if (region.empty) return sets;

  const auto xi = all_profiles(series, g);
  const int nf = series.nframes();
  const auto m_eps = dilate(region.cells, params.epsilon_cells);
  const auto m_2eps = dilate(region.cells, 2 * params.epsilon_cells);

  auto in_collar = [&](int f, int lo, int hi) {
    for (int i = lo; i <= hi; ++i)
      if (m_2eps[f][i] && !m_eps[f][i]) return true;
    return false;
  };

  for (int s = 0; s < 3; ++s) {
    if (!region.active[s]) continue;
    const WaveSupport sup =
        support_of(series, xi, static_cast<WaveKind>(s), params.threshold * region.global_max[s]);

    // nearest-interval tracking with a CFL-sized gate (per-step displacement
    // is below one cell, so 3 cells of slack is speed-consistent)
    const int gate = 3;
    std::vector<Track> tracks;
    std::vector<int> open;  // indices of tracks alive in the previous frame
    for (int f = 0; f < nf; ++f) {
      std::vector<int> next_open;
      std::vector<int> claimed(sup.intervals[f].size(), -1);
      for (int tid : open) {
        const auto& last = tracks[tid].intervals.back();
        int best = -1, best_overlap = -1;
        for (size_t c = 0; c < sup.intervals[f].size(); ++c) {
          const auto& iv = sup.intervals[f][c];
          const int lo = std::max(last.first - gate, iv.first);
          const int hi = std::min(last.second + gate, iv.second);
          const int ov = hi - lo;
          if (ov >= 0 && ov > best_overlap) {
            best_overlap = ov;
            best = static_cast<int>(c);
          }
        }
        if (best >= 0) {
          if (claimed[best] >= 0) {
            sets.diagnostics.push_back("components of " +
                                       std::string(wave_kind_name(static_cast<WaveKind>(s))) +
                                       " merge at frame " + std::to_string(f));
            continue;  // earlier track keeps the component
          }
          claimed[best] = tid;
          tracks[tid].frames.push_back(f);
          tracks[tid].intervals.push_back(sup.intervals[f][best]);
          next_open.push_back(tid);
        }
      }
      for (size_t c = 0; c < sup.intervals[f].size(); ++c) {
        if (claimed[c] >= 0) continue;
        Track t;
        t.frames.push_back(f);
        t.intervals.push_back(sup.intervals[f][c]);
        tracks.push_back(std::move(t));
        next_open.push_back(static_cast<int>(tracks.size()) - 1);
        claimed[c] = static_cast<int>(tracks.size()) - 1;
      }
      open = std::move(next_open);
    }

    bool entering = false, leaving = false;
    for (auto& t : tracks) {
      for (size_t k = 0; k < t.frames.size(); ++k) {
        const int f = t.frames[k];
        const auto& iv = t.intervals[k];
        const int centroid = (iv.first + iv.second) / 2;
        const bool in_region = region.cells[f][centroid];
        const bool collar = in_collar(f, iv.first, iv.second);
        if (collar && !t.seen_region) t.seen_collar_before_region = true;
        if (in_region) {
          t.seen_region = true;
          if (t.seen_collar_before_region) t.visited_collar_then_region = true;
        }
        if (collar && t.seen_region) t.visited_region_then_collar = true;
      }
      entering = entering || t.visited_collar_then_region;
      leaving = leaving || t.visited_region_then_collar;
    }
    if (entering) sets.entering.push_back(static_cast<WaveKind>(s));
    if (leaving) sets.leaving.push_back(static_cast<WaveKind>(s));
  }
  return sets;
}

IndexResult interaction_index(const WaveSets& sets) {
  IndexResult r;
  r.index = static_cast<int>(sets.leaving.size()) - static_cast<int>(sets.entering.size());
  r.detection_error = sets.detection_error || r.index < 0;
  return r;
}

}  // namespace wavelab
