#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

inline constexpr const char* kVersion = "0.1.0";

/// Round-trip-exact, locale-independent decimal formatting.
std::string format_double(double x);

/// Write via a temp file in the same directory, then rename into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Header lines carried by every numeric output file.
std::string artifact_header(std::uint64_t seed, const std::string& extra = "");

/// CSV of a time series: columns t, x, then the component names
/// (rho,p,u | r1,r2 | t1,t2,t3 plus mapped rho,p,u for t-variable grids).
std::string time_series_csv(const TimeSeries& series, std::uint64_t seed,
                            const std::vector<std::string>& component_names,
                            const std::vector<std::vector<double>>* extra_cols = nullptr,
                            const std::vector<std::string>& extra_names = {});

std::vector<std::string> component_names_for(GridKind kind);

}  // namespace wavelab
