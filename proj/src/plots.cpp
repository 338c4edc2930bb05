#include "clustan/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "clustan/error.hpp"

namespace clustan {

namespace {

constexpr std::array<std::string_view, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                      "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  static Range of(std::span<const double> values, double fallback_lo, double fallback_hi) {
    if (values.empty()) return {fallback_lo, fallback_hi};
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    Range r{*mn, *mx};
    if (r.hi - r.lo <= 0.0) {
      r.lo -= 1.0;
      r.hi += 1.0;
    }
    const double pad = 0.05 * (r.hi - r.lo);
    r.lo -= pad;
    r.hi += pad;
    return r;
  }
};

/// Plot area inside an SVG canvas mapping data coordinates to pixels.
struct Frame {
  double left, top, width, height;
  Range x, y;

  double px(double v) const { return left + (v - x.lo) / (x.hi - x.lo) * width; }
  double py(double v) const { return top + height - (v - y.lo) / (y.hi - y.lo) * height; }
};

class Svg {
 public:
  Svg(int width, int height) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
         << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
         << "\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, std::string_view cls, std::string_view stroke,
            std::string_view extra = "") {
    out_ << "<line class=\"" << cls << "\" x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1) << "\" x2=\"" << fixed(x2)
         << "\" y2=\"" << fixed(y2) << "\" stroke=\"" << stroke << "\"" << extra << "/>\n";
  }

  void text(double x, double y, std::string_view content, std::string_view cls, std::string_view anchor = "middle",
            std::string_view extra = "") {
    out_ << "<text class=\"" << cls << "\" x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" text-anchor=\"" << anchor
         << "\"" << extra << ">" << escape(content) << "</text>\n";
  }

  void raw(std::string_view element) { out_ << element << '\n'; }

  std::ostringstream& stream() { return out_; }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

  void axes(const Frame& f, std::string_view x_label, std::string_view y_label, int ticks = 5) {
    out_ << "<rect class=\"frame\" x=\"" << fixed(f.left) << "\" y=\"" << fixed(f.top) << "\" width=\""
         << fixed(f.width) << "\" height=\"" << fixed(f.height) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int t = 0; t <= ticks; ++t) {
      const double xv = f.x.lo + (f.x.hi - f.x.lo) * t / ticks;
      const double yv = f.y.lo + (f.y.hi - f.y.lo) * t / ticks;
      line(f.px(xv), f.top + f.height, f.px(xv), f.top + f.height + 5, "tick", "#333333");
      text(f.px(xv), f.top + f.height + 18, fixed(xv), "tick-label");
      line(f.left - 5, f.py(yv), f.left, f.py(yv), "tick", "#333333");
      text(f.left - 8, f.py(yv) + 4, fixed(yv), "tick-label", "end");
    }
    text(f.left + f.width / 2, f.top + f.height + 38, x_label, "axis-label");
    const double ly = f.top + f.height / 2;
    text(f.left - 48, ly, y_label, "axis-label", "middle",
         " transform=\"rotate(-90 " + fixed(f.left - 48) + " " + fixed(ly) + ")\"");
  }

 private:
  std::ostringstream out_;
};

std::string percent_label(std::string_view axis, double fraction) {
  return std::string(axis) + " (" + fixed(100.0 * fraction, 1) + "% variance)";
}

}  // namespace

std::string_view cluster_color(int cluster) noexcept {
  return kPalette[static_cast<std::size_t>(cluster < 0 ? 0 : cluster) % kPalette.size()];
}

std::string emit_scatter_svg(const Projection2D& proj, std::span<const int> labels, const std::optional<Matrix>& centers,
                             std::string_view title) {
  const std::size_t n = proj.coords.rows();
  if (labels.size() != n) throw Error(ErrorKind::DimensionMismatch, "labels and projected points differ in length");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(proj.coords(i, 0));
    ys.push_back(proj.coords(i, 1));
  }
  if (centers) {
    for (std::size_t c = 0; c < centers->rows(); ++c) {
      xs.push_back((*centers)(c, 0));
      ys.push_back((*centers)(c, 1));
    }
  }
  const Frame f{80, 40, 520, 380, Range::of(xs, -1.0, 1.0), Range::of(ys, -1.0, 1.0)};
  Svg svg(640, 500);
  svg.text(320, 24, title, "title", "middle", " font-size=\"16\"");
  svg.axes(f, percent_label("PC1", proj.axis_variance[0]), percent_label("PC2", proj.axis_variance[1]));
  auto& out = svg.stream();
  for (std::size_t i = 0; i < n; ++i) {
    out << "<circle class=\"point\" cx=\"" << fixed(f.px(proj.coords(i, 0))) << "\" cy=\""
        << fixed(f.py(proj.coords(i, 1))) << "\" r=\"3\" fill=\"" << cluster_color(labels[i])
        << "\" fill-opacity=\"0.6\" data-cluster=\"" << labels[i] << "\"/>\n";
  }
  if (centers) {
    for (std::size_t c = 0; c < centers->rows(); ++c) {
      const double cx = f.px((*centers)(c, 0));
      const double cy = f.py((*centers)(c, 1));
      out << "<path class=\"center\" d=\"M" << fixed(cx - 7) << ' ' << fixed(cy - 7) << " L" << fixed(cx + 7) << ' '
          << fixed(cy + 7) << " M" << fixed(cx - 7) << ' ' << fixed(cy + 7) << " L" << fixed(cx + 7) << ' '
          << fixed(cy - 7) << "\" stroke=\"black\" stroke-width=\"3\" data-cluster=\"" << c << "\"/>\n";
    }
  }
  int max_label = -1;
  for (int l : labels) max_label = std::max(max_label, l);
  for (int c = 0; c <= max_label; ++c) {
    const double y = 56 + 16 * c;
    out << "<circle class=\"legend-swatch\" cx=\"" << 540 << "\" cy=\"" << fixed(y - 4) << "\" r=\"5\" fill=\""
        << cluster_color(c) << "\"/>\n";
    svg.text(550, y, "Cluster " + std::to_string(c + 1), "legend", "start");
  }
  return svg.finish();
}

std::string emit_silhouette_svg(const SilhouetteReport& report, std::string_view title) {
  const std::size_t n = report.widths.size();
  const double bar_h = n > 0 ? std::max(0.5, std::min(12.0, 600.0 / static_cast<double>(n))) : 12.0;
  const double gap = 6.0;
  std::size_t groups = 0;
  for (auto s : report.cluster_sizes) groups += s > 0 ? 1 : 0;
  const double plot_h = std::max(100.0, bar_h * static_cast<double>(n) + gap * static_cast<double>(groups));
  const Frame f{80, 40, 460, plot_h, Range{-1.0, 1.0}, Range{0.0, plot_h}};
  const int height = static_cast<int>(std::ceil(plot_h)) + 100;
  Svg svg(720, height);
  svg.text(310, 24, title, "title", "middle", " font-size=\"16\"");
  svg.stream() << "<rect class=\"frame\" x=\"" << fixed(f.left) << "\" y=\"" << fixed(f.top) << "\" width=\""
               << fixed(f.width) << "\" height=\"" << fixed(f.height) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = -1.0 + 0.5 * t;
    svg.line(f.px(xv), f.top + f.height, f.px(xv), f.top + f.height + 5, "tick", "#333333");
    svg.text(f.px(xv), f.top + f.height + 18, fixed(xv), "tick-label");
  }
  svg.text(f.left + f.width / 2, f.top + f.height + 38, "Silhouette width s(i)", "axis-label");
  svg.line(f.px(0.0), f.top, f.px(0.0), f.top + f.height, "zero-line", "#333333");

  auto& out = svg.stream();
  double y = f.top + gap / 2;
  int current = -1;
  double group_start = y;
  auto close_group = [&](int cluster) {
    if (cluster < 0) return;
    const auto c = static_cast<std::size_t>(cluster);
    svg.text(f.left + f.width + 10, (group_start + y) / 2 + 4,
             "Cluster " + std::to_string(cluster + 1) + ": n=" + std::to_string(report.cluster_sizes[c]) +
                 ", mean=" + fixed(report.cluster_means[c]),
             "cluster-mean", "start");
  };
  for (auto i : report.order) {
    const int cluster = report.labels.at(i);
    if (cluster != current) {
      close_group(current);
      if (current >= 0) y += gap;
      group_start = y;
      current = cluster;
    }
    const double w = report.widths[i];
    const double x0 = f.px(std::min(0.0, w));
    const double x1 = f.px(std::max(0.0, w));
    out << "<rect class=\"bar\" x=\"" << fixed(x0) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(x1 - x0)
        << "\" height=\"" << fixed(bar_h) << "\" fill=\"" << cluster_color(cluster) << "\"/>\n";
    y += bar_h;
  }
  close_group(current);
  if (n > 0) {
    svg.line(f.px(report.overall), f.top, f.px(report.overall), f.top + f.height, "mean-line", "red",
             " stroke-dasharray=\"6 4\"");
    svg.text(f.px(report.overall), f.top - 6, "average = " + fixed(report.overall), "overall-mean");
  }
  return svg.finish();
}

std::string emit_sweep_svg(const KSweepResult& sweep) {
  const std::size_t count = sweep.ks.size();
  std::vector<double> ks(sweep.ks.begin(), sweep.ks.end());
  const Range k_range = count > 0 ? Range{ks.front() - 0.5, ks.back() + 0.5} : Range{1.5, 2.5};
  const Frame sil{80, 50, 360, 320, k_range, Range::of(sweep.avg_silhouette, 0.0, 1.0)};
  const Frame wss{560, 50, 360, 320, k_range, Range::of(sweep.wss, 0.0, 1.0)};
  const std::string objective = sweep.algorithm == SweepAlgorithm::Pam ? "Total medoid distance" : "Within-cluster SS";

  Svg svg(1000, 440);
  svg.text(sil.left + sil.width / 2, 30, "Average silhouette by k", "title", "middle", " font-size=\"16\"");
  svg.text(wss.left + wss.width / 2, 30, objective + " by k", "title", "middle", " font-size=\"16\"");
  svg.axes(sil, "Number of clusters k", "Average silhouette", static_cast<int>(std::max<std::size_t>(count, 1)));
  svg.axes(wss, "Number of clusters k", objective, static_cast<int>(std::max<std::size_t>(count, 1)));

  auto& out = svg.stream();
  auto curve = [&](const Frame& f, const std::vector<double>& values, std::string_view color) {
    out << "<polyline class=\"curve\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < count; ++i) out << (i ? " " : "") << fixed(f.px(ks[i])) << ',' << fixed(f.py(values[i]));
    out << "\"/>\n";
    for (std::size_t i = 0; i < count; ++i) {
      out << "<circle class=\"marker\" cx=\"" << fixed(f.px(ks[i])) << "\" cy=\"" << fixed(f.py(values[i]))
          << "\" r=\"4\" fill=\"" << color << "\" data-k=\"" << sweep.ks[i] << "\"/>\n";
    }
  };
  curve(sil, sweep.avg_silhouette, "#1f77b4");
  curve(wss, sweep.wss, "#2ca02c");

  const auto best = std::find(sweep.ks.begin(), sweep.ks.end(), sweep.best_k);
  if (best != sweep.ks.end()) {
    const auto i = static_cast<std::size_t>(best - sweep.ks.begin());
    for (const Frame* f : {&sil, &wss}) {
      svg.line(f->px(ks[i]), f->top, f->px(ks[i]), f->top + f->height, "best-line", "red", " stroke-dasharray=\"4 4\"");
    }
    out << "<circle class=\"best\" cx=\"" << fixed(sil.px(ks[i])) << "\" cy=\"" << fixed(sil.py(sweep.avg_silhouette[i]))
        << "\" r=\"7\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    svg.text(sil.px(ks[i]) + 10, sil.py(sweep.avg_silhouette[i]) - 10,
             "best k = " + std::to_string(sweep.best_k) + " (" + fixed(sweep.avg_silhouette[i], 3) + ")", "best-label",
             "start");
  }
  return svg.finish();
}

std::string scatter_csv(const Projection2D& proj, std::span<const int> labels, std::span<const std::string> row_ids) {
  if (labels.size() != proj.coords.rows() || row_ids.size() != labels.size()) {
    throw Error(ErrorKind::DimensionMismatch, "scatter data columns differ in length");
  }
  std::ostringstream out;
  out << "row_id,pc1,pc2,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << row_ids[i] << ',' << format_number(proj.coords(i, 0)) << ',' << format_number(proj.coords(i, 1)) << ','
        << labels[i] + 1 << '\n';
  }
  return out.str();
}

std::string silhouette_csv(const SilhouetteReport& report, std::span<const std::string> row_ids) {
  if (row_ids.size() != report.widths.size()) throw Error(ErrorKind::DimensionMismatch, "row ids and widths differ");
  std::ostringstream out;
  out << "rank,row_id,cluster,width\n";
  std::size_t rank = 0;
  for (auto i : report.order) {
    out << rank++ << ',' << row_ids[i] << ',' << report.labels[i] + 1 << ',' << format_number(report.widths[i]) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const KSweepResult& sweep) {
  std::ostringstream out;
  out << "k,avg_silhouette," << (sweep.algorithm == SweepAlgorithm::Pam ? "cost" : "wss") << ",best\n";
  for (std::size_t i = 0; i < sweep.ks.size(); ++i) {
    out << sweep.ks[i] << ',' << format_number(sweep.avg_silhouette[i]) << ',' << format_number(sweep.wss[i]) << ','
        << (sweep.ks[i] == sweep.best_k ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace clustan
