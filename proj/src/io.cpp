#include "wavelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavelab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string artifact_header(std::uint64_t seed, const std::string& extra) {
  std::ostringstream os;
  os << "# wavelab " << kVersion << " seed=" << seed
     << " tolerances: bracket=1e-8 rank=1e-10 exact-zero=1e-12";
  if (!extra.empty()) os << " " << extra;
  os << "\n";
  return os.str();
}

std::vector<std::string> component_names_for(GridKind kind) {
  switch (kind) {
    case GridKind::euler_state: return {"rho", "p", "u"};
    case GridKind::invariants: return {"r1", "r2"};
    case GridKind::tvars: return {"t1", "t2", "t3"};
  }
  return {};
}

std::string time_series_csv(const TimeSeries& series, std::uint64_t seed,
                            const std::vector<std::string>& component_names,
                            const std::vector<std::vector<double>>* extra_cols,
                            const std::vector<std::string>& extra_names) {
  std::ostringstream os;
  os << artifact_header(seed);
  os << "t,x";
  for (const auto& n : component_names) os << "," << n;
  for (const auto& n : extra_names) os << "," << n;
  os << "\n";
  size_t row = 0;
  for (int f = 0; f < series.nframes(); ++f) {
    const Grid1D& g = series.frames[f];
    for (int i = 0; i < g.nx(); ++i, ++row) {
      os << format_double(series.times[f]) << "," << format_double(g.x(i));
      for (int c = 0; c < g.ncomp(); ++c) os << "," << format_double(g.at(i, c));
      if (extra_cols)
        for (const auto& col : *extra_cols) os << "," << format_double(col[row]);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace wavelab
