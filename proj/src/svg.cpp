#include "wavelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavelab/io.hpp"

namespace wavelab {
namespace svg {

namespace {

std::string color_of(double v, double lo, double hi) {
  // blue -> white -> red
  double s = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  s = std::clamp(s, 0.0, 1.0);
  int r, g, b;
  if (s < 0.5) {
    const double t = s * 2.0;
    r = static_cast<int>(255 * t);
    g = static_cast<int>(255 * t);
    b = 255;
  } else {
    const double t = (s - 0.5) * 2.0;
    r = 255;
    g = static_cast<int>(255 * (1.0 - t));
    b = static_cast<int>(255 * (1.0 - t));
  }
  std::ostringstream os;
  os << "rgb(" << r << "," << g << "," << b << ")";
  return os.str();
}

struct Canvas {
  std::ostringstream body;
  int width = 860, height = 640;

  std::string finish(const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"16\" y=\"24\" font-family=\"monospace\" font-size=\"15\">" << title
       << "</text>\n";
    os << body.str();
    os << "</svg>\n";
    return os.str();
  }
};

constexpr int kMaxCells = 200;

}  // namespace

std::string heatmap(const TimeSeries& series, int comp, const std::string& title) {
  Canvas cv;
  const int nf = series.nframes();
  if (nf == 0) return cv.finish(title);
  const int nx = series.frames[0].nx();
  const int fstep = std::max(1, nf / kMaxCells);
  const int xstep = std::max(1, nx / kMaxCells);

  double lo = series.frames[0].at(0, comp), hi = lo;
  for (const auto& g : series.frames)
    for (int i = 0; i < g.nx(); ++i) {
      lo = std::min(lo, g.at(i, comp));
      hi = std::max(hi, g.at(i, comp));
    }

  const double px0 = 60, py0 = 40, pw = cv.width - 90.0, ph = cv.height - 90.0;
  for (int f = 0; f < nf; f += fstep) {
    for (int i = 0; i < nx; i += xstep) {
      const double x = px0 + pw * i / nx;
      const double y = py0 + ph * (nf - 1 - f) / nf;
      cv.body << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
              << pw * xstep / nx + 0.6 << "\" height=\"" << ph * fstep / nf + 0.6
              << "\" fill=\"" << color_of(series.frames[f].at(i, comp), lo, hi) << "\"/>\n";
    }
  }
  cv.body << "<text x=\"16\" y=\"" << cv.height - 20
          << "\" font-family=\"monospace\" font-size=\"12\">x -&gt; , t ^ ; range ["
          << format_double(lo) << ", " << format_double(hi) << "]</text>\n";
  return cv.finish(title);
}

std::string region_overlay(const TimeSeries& series, const GasParameters& g,
                           const InteractionRegion& region, const std::string& title) {
  Canvas cv;
  const int nf = series.nframes();
  if (nf == 0) return cv.finish(title);
  const int nx = series.frames[0].nx();
  const int fstep = std::max(1, nf / kMaxCells);
  const int xstep = std::max(1, nx / kMaxCells);
  const double px0 = 60, py0 = 40, pw = cv.width - 90.0, ph = cv.height - 90.0;

  const char* kind_color[3] = {"rgba(220,60,60,0.45)", "rgba(60,160,60,0.45)",
                               "rgba(60,60,220,0.45)"};
  for (int f = 0; f < nf; f += fstep) {
    const XiProfiles xi = decompose_gradient(series.frames[f], g);
    for (int i = 0; i < nx; i += xstep) {
      const double x = px0 + pw * i / nx;
      const double y = py0 + ph * (nf - 1 - f) / nf;
      for (int s = 0; s < 3; ++s) {
        if (!region.active[s]) continue;
        if (std::abs(xi.xi[s][i]) >= region.params.threshold * region.global_max[s]) {
          cv.body << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
                  << pw * xstep / nx + 0.5 << "\" height=\"" << ph * fstep / nf + 0.5
                  << "\" fill=\"" << kind_color[s] << "\"/>\n";
        }
      }
      if (!region.empty && region.cells[f][i]) {
        cv.body << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
                << pw * xstep / nx + 0.5 << "\" height=\"" << ph * fstep / nf + 0.5
                << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.7\"/>\n";
      }
    }
  }
  cv.body << "<text x=\"16\" y=\"" << cv.height - 20
          << "\" font-family=\"monospace\" font-size=\"12\">red=S+ green=E blue=S- "
             "black=superposition region</text>\n";
  return cv.finish(title);
}

std::string wireframe(const std::vector<Mesh>& meshes, const std::string& title) {
  Canvas cv;
  // fixed isometric-style projection of (rho, p, u)
  auto project = [](const Vec3& v) {
    const double x = 0.86 * v[0] - 0.5 * v[1];
    const double y = 0.5 * v[0] + 0.86 * v[1] + 0.9 * v[2];
    return std::pair<double, double>(x, -y);
  };
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& m : meshes)
    for (const auto& row : m.rows)
      for (const auto& p : row) {
        const auto [x, y] = project(p);
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
      }
  if (xhi <= xlo) return cv.finish(title);
  const double px0 = 40, py0 = 50, pw = cv.width - 80.0, ph = cv.height - 100.0;
  auto map = [&](const Vec3& v) {
    const auto [x, y] = project(v);
    return std::pair<double, double>(px0 + pw * (x - xlo) / (xhi - xlo),
                                     py0 + ph * (y - ylo) / (yhi - ylo));
  };
  for (const auto& m : meshes) {
    auto polyline = [&](const std::vector<Vec3>& pts) {
      cv.body << "<polyline fill=\"none\" stroke=\"" << m.color
              << "\" stroke-width=\"0.8\" points=\"";
      for (const auto& p : pts) {
        const auto [x, y] = map(p);
        cv.body << x << "," << y << " ";
      }
      cv.body << "\"/>\n";
    };
    for (const auto& row : m.rows) polyline(row);
    if (!m.rows.empty()) {
      for (size_t c = 0; c < m.rows[0].size(); ++c) {
        std::vector<Vec3> colpts;
        for (const auto& row : m.rows)
          if (c < row.size()) colpts.push_back(row[c]);
        polyline(colpts);
      }
    }
  }
  return cv.finish(title);
}

}  // namespace svg
}  // namespace wavelab
