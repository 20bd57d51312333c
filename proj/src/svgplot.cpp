#include "isotrack/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "isotrack/errors.hpp"

namespace isotrack {

namespace {

constexpr double kW = 640.0, kH = 480.0, kPad = 48.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) { lo = std::min(lo, v); hi = std::max(hi, v); }
  void pad() {
    if (!(hi > lo)) { lo -= 1.0; hi += 1.0; }
    const double m = 0.05 * (hi - lo);
    lo -= m; hi += m;
  }
};

struct Mapper {
  Extent ex, ey;
  double sx(double x) const { return kPad + (x - ex.lo) / (ex.hi - ex.lo) * (kW - 2 * kPad); }
  double sy(double y) const { return kH - kPad - (y - ey.lo) / (ey.hi - ey.lo) * (kH - 2 * kPad); }
};

class Svg {
 public:
  explicit Svg(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw Error("cannot write plot file: " + path);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
         << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  void frame(const Mapper& m, const std::string& xlabel, const std::string& ylabel) {
    out_ << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad
         << "\" height=\"" << kH - 2 * kPad
         << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    text(kW / 2, kH - 12, xlabel);
    text(14, kH / 2, ylabel, true);
    text(kPad, kH - kPad + 16, num(m.ex.lo));
    text(kW - kPad, kH - kPad + 16, num(m.ex.hi));
    text(kPad - 6, kH - kPad, num(m.ey.lo), false, true);
    text(kPad - 6, kPad, num(m.ey.hi), false, true);
  }
  void polyline(const Mapper& m, const std::vector<std::pair<double, double>>& pts,
                const std::string& color, double width = 1.2) {
    if (pts.empty()) return;
    if (pts.size() == 1) {
      dot(m, pts[0].first, pts[0].second, color);
      return;
    }
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
         << "\" points=\"";
    for (const auto& [x, y] : pts) out_ << num(m.sx(x)) << ',' << num(m.sy(y)) << ' ';
    out_ << "\"/>\n";
  }
  void dot(const Mapper& m, double x, double y, const std::string& color) {
    out_ << "<circle cx=\"" << num(m.sx(x)) << "\" cy=\"" << num(m.sy(y))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
  void circle(const Mapper& m, double cx, double cy, double r, const std::string& color) {
    // draw as a polyline so anisotropic axis scales cannot distort it
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 90; ++i) {
      const double a = 2.0 * 3.14159265358979323846 * i / 90;
      pts.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
    }
    polyline(m, pts, color, 0.8);
  }
  void hline(const Mapper& m, double y, const std::string& color) {
    out_ << "<line x1=\"" << kPad << "\" x2=\"" << kW - kPad << "\" y1=\"" << num(m.sy(y))
         << "\" y2=\"" << num(m.sy(y)) << "\" stroke=\"" << color
         << "\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>\n";
  }
  void text(double x, double y, const std::string& s, bool vertical = false,
            bool right = false) {
    out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"11\" font-family=\"sans-serif\"";
    if (right) out_ << " text-anchor=\"end\"";
    if (vertical) out_ << " transform=\"rotate(-90 " << x << ' ' << y << ")\" text-anchor=\"middle\"";
    out_ << '>' << s << "</text>\n";
  }
  void close() { out_ << "</svg>\n"; }

 private:
  std::ofstream out_;
  std::string path_;
};

void write_series(const std::string& path, const std::string& header,
                  const std::vector<std::pair<double, double>>& pts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write plot series: " + path);
  out << header << '\n';
  char buf[96];
  for (const auto& [a, b] : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a, b);
    out << buf;
  }
}

std::vector<std::pair<double, Circle>> decode_snapshots(const Metadata& meta) {
  std::vector<std::pair<double, Circle>> snaps;
  const auto it = meta.find("isoline_snapshots");
  if (it == meta.end()) return snaps;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ';')) {
    double t, cx, cy, r;
    if (std::sscanf(item.c_str(), "%lf:%lf:%lf:%lf", &t, &cx, &cy, &r) == 4)
      snaps.push_back({t, Circle{{cx, cy}, r}});
  }
  return snaps;
}

double meta_number(const Metadata& meta, const std::string& key, double fallback) {
  const auto it = meta.find(key);
  if (it == meta.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    return fallback;
  }
}

}  // namespace

std::string encode_snapshots(const std::vector<std::pair<double, Circle>>& snaps) {
  std::string out;
  char buf[160];
  for (const auto& [t, c] : snaps) {
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%.17g:%.17g", t, c.center.x, c.center.y,
                  c.radius);
    if (!out.empty()) out += ';';
    out += buf;
  }
  return out;
}

PlotFiles emit_plots(const TrajectoryFile& traj, const std::string& out_dir) {
  if (traj.rows.empty()) throw Error("no trajectory rows to plot");
  std::filesystem::create_directories(out_dir);
  PlotFiles files;

  const auto snaps = decode_snapshots(traj.meta);
  const double d0 = meta_number(traj.meta, "d0", 0.0);
  const double band = meta_number(traj.meta, "band", 0.0);

  {  // planar path with isoline snapshot rings
    std::vector<std::pair<double, double>> pts;
    Mapper m;
    for (const TrajectoryRow& r : traj.rows) {
      pts.emplace_back(r.x, r.y);
      m.ex.add(r.x);
      m.ey.add(r.y);
    }
    for (const auto& [t, c] : snaps) {
      m.ex.add(c.center.x - c.radius); m.ex.add(c.center.x + c.radius);
      m.ey.add(c.center.y - c.radius); m.ey.add(c.center.y + c.radius);
    }
    m.ex.pad(); m.ey.pad();
    const std::string svg_path = out_dir + "/trajectory.svg";
    Svg svg(svg_path);
    svg.frame(m, "x", "y");
    for (const auto& [t, c] : snaps) svg.circle(m, c.center.x, c.center.y, c.radius, "#888888");
    svg.polyline(m, pts, "#1f5fbf");
    svg.dot(m, pts.front().first, pts.front().second, "#2ca02c");
    svg.dot(m, pts.back().first, pts.back().second, "#d62728");
    svg.close();
    const std::string csv_path = out_dir + "/trajectory_xy.csv";
    write_series(csv_path, "x,y", pts);
    files.written.push_back(svg_path);
    files.written.push_back(csv_path);
  }

  {  // measured value against the target level
    std::vector<std::pair<double, double>> pts;
    Mapper m;
    for (const TrajectoryRow& r : traj.rows) {
      pts.emplace_back(r.t, r.d);
      m.ex.add(r.t);
      m.ey.add(r.d);
    }
    m.ey.add(d0);
    if (band > 0.0) { m.ey.add(d0 - band); m.ey.add(d0 + band); }
    m.ex.pad(); m.ey.pad();
    const std::string svg_path = out_dir + "/level.svg";
    Svg svg(svg_path);
    svg.frame(m, "t", "d");
    svg.hline(m, d0, "#d62728");
    if (band > 0.0) { svg.hline(m, d0 - band, "#bbbbbb"); svg.hline(m, d0 + band, "#bbbbbb"); }
    svg.polyline(m, pts, "#1f5fbf");
    svg.close();
    const std::string csv_path = out_dir + "/level_series.csv";
    write_series(csv_path, "t,d", pts);
    files.written.push_back(svg_path);
    files.written.push_back(csv_path);
  }

  {  // switching signal
    std::vector<std::pair<double, double>> pts;
    Mapper m;
    for (const TrajectoryRow& r : traj.rows) {
      pts.emplace_back(r.t, r.s);
      m.ex.add(r.t);
      m.ey.add(r.s);
    }
    m.ey.add(0.0);
    m.ex.pad(); m.ey.pad();
    const std::string svg_path = out_dir + "/switching.svg";
    Svg svg(svg_path);
    svg.frame(m, "t", "s");
    svg.hline(m, 0.0, "#888888");
    svg.polyline(m, pts, "#9467bd");
    svg.close();
    const std::string csv_path = out_dir + "/switching_series.csv";
    write_series(csv_path, "t,s", pts);
    files.written.push_back(svg_path);
    files.written.push_back(csv_path);
  }
  return files;
}

}  // namespace isotrack
