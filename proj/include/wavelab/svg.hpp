#pragma once

#include <string>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/interaction.hpp"

namespace wavelab {
namespace svg {

/// Space-time heatmap of one component of a time series.
std::string heatmap(const TimeSeries& series, int comp, const std::string& title);

/// Schematic overlay of the per-kind supports and the superposition region.
std::string region_overlay(const TimeSeries& series, const GasParameters& g,
                           const InteractionRegion& region, const std::string& title);

/// Wireframe projection of a family of surface meshes (one polyline bundle per
/// mesh), isometric-style fixed projection.
struct Mesh {
  std::vector<std::vector<Vec3>> rows;  // rows of points along the first parameter
  std::string color;
};
std::string wireframe(const std::vector<Mesh>& meshes, const std::string& title);

}  // namespace svg
}  // namespace wavelab
