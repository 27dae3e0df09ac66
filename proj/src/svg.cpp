#include "backbone/svg.hpp"

#include <sstream>

#include "backbone/io.hpp"

namespace backbone {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#4b0082", "#a0522d"};

struct Mapper {
  const Environment& env;
  double scale;
  double margin;

  double x(double wx) const { return margin + (wx - env.bounds.min.x) * scale; }
  double y(double wy) const { return margin + (env.bounds.max.y - wy) * scale; }
  std::string pt(const Vec2& p) const {
    return format_number(x(p.x)) + "," + format_number(y(p.y));
  }
};

void emit_polyline(std::ostringstream& out, const Mapper& m, const std::vector<Vec2>& pts,
                   const std::string& style) {
  out << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out << " ";
    out << m.pt(pts[i]);
  }
  out << "\"/>\n";
}

void emit_polygon(std::ostringstream& out, const Mapper& m, const Polygon& poly,
                  const std::string& style) {
  out << "<polygon " << style << " points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out << " ";
    out << m.pt(poly[i]);
  }
  out << "\"/>\n";
}

void emit_circle(std::ostringstream& out, const Mapper& m, const Vec2& c, double r_px,
                 const std::string& style) {
  out << "<circle cx=\"" << format_number(m.x(c.x)) << "\" cy=\"" << format_number(m.y(c.y))
      << "\" r=\"" << format_number(r_px) << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const Environment& env, const RenderOptions& opts) {
  const double margin = 10.0;
  const Mapper m{env, opts.pixels_per_meter, margin};
  const double width = env.bounds.width() * opts.pixels_per_meter + 2 * margin;
  const double height = env.bounds.height() * opts.pixels_per_meter + 2 * margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width)
      << "\" height=\"" << format_number(height) << "\" viewBox=\"0 0 " << format_number(width)
      << " " << format_number(height) << "\">\n";
  out << "<rect x=\"" << format_number(m.x(env.bounds.min.x)) << "\" y=\""
      << format_number(m.y(env.bounds.max.y)) << "\" width=\""
      << format_number(env.bounds.width() * opts.pixels_per_meter) << "\" height=\""
      << format_number(env.bounds.height() * opts.pixels_per_meter)
      << "\" fill=\"#ffffff\" stroke=\"#303030\" stroke-width=\"2\"/>\n";

  if (opts.dilated) {
    for (const Polygon& poly : opts.dilated->obstacles)
      emit_polygon(out, m, poly,
                   "fill=\"none\" stroke=\"#c0c0c0\" stroke-width=\"1\" stroke-dasharray=\"3,3\"");
  }
  for (const Polygon& poly : env.obstacles)
    emit_polygon(out, m, poly, "fill=\"#9a9a9a\" stroke=\"#606060\" stroke-width=\"1\"");

  if (opts.graph) {
    for (std::size_t i = 0; i < opts.graph->nodes.size(); ++i) {
      for (const GraphEdge& e : opts.graph->adj[i]) {
        if (e.to <= static_cast<int>(i)) continue;
        emit_polyline(out, m,
                      {opts.graph->nodes[i], opts.graph->nodes[static_cast<std::size_t>(e.to)]},
                      "stroke=\"#b8cbe0\" stroke-width=\"0.5\"");
      }
    }
  }

  for (const RobotTrajectories& tr : opts.trajectories) {
    for (std::size_t r = 0; r < tr.robot_count(); ++r) {
      std::vector<Vec2> line;
      line.reserve(tr.timestamps.size());
      for (const auto& row : tr.positions) line.push_back(row[r]);
      const std::string color = kPalette[r % (sizeof(kPalette) / sizeof(kPalette[0]))];
      emit_polyline(out, m, line, "stroke=\"" + color + "\" stroke-width=\"1.5\"");
      if (!line.empty()) {
        emit_circle(out, m, line.front(), 3.0, "fill=\"#2ca02c\"");
        emit_circle(out, m, line.back(), 3.0, "fill=\"#1f3fbf\"");
      }
    }
  }

  for (const BackboneConfig& cfg : opts.backbones) {
    emit_polyline(out, m, cfg.chain(),
                  "stroke=\"#101010\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
    for (const Vec2& relay : cfg.relay_positions)
      emit_circle(out, m, relay, 4.0, "fill=\"#ff7f0e\" stroke=\"#803f07\" stroke-width=\"1\"");
    emit_circle(out, m, cfg.leader_position, 4.5, "fill=\"#101010\"");
  }

  emit_circle(out, m, env.base_station, 5.0, "fill=\"#2ca02c\" stroke=\"#14501f\" stroke-width=\"1.5\"");
  out << "</svg>\n";
  return out.str();
}

namespace {

struct Panel {
  double x0, y0, w, h;  // plot area in svg coordinates
  double max_value;     // top of the y axis

  double value_y(double v) const { return y0 + h - (max_value > 0 ? v / max_value * h : 0.0) ; }
};

void emit_axes(std::ostringstream& out, const Panel& p, const std::string& title,
               const std::string& y_label) {
  out << "<line x1=\"" << format_number(p.x0) << "\" y1=\"" << format_number(p.y0 + p.h)
      << "\" x2=\"" << format_number(p.x0 + p.w) << "\" y2=\"" << format_number(p.y0 + p.h)
      << "\" stroke=\"#303030\"/>\n";
  out << "<line x1=\"" << format_number(p.x0) << "\" y1=\"" << format_number(p.y0) << "\" x2=\""
      << format_number(p.x0) << "\" y2=\"" << format_number(p.y0 + p.h)
      << "\" stroke=\"#303030\"/>\n";
  out << "<text x=\"" << format_number(p.x0 + p.w / 2) << "\" y=\"" << format_number(p.y0 - 8)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
  out << "<text x=\"" << format_number(p.x0 - 6) << "\" y=\"" << format_number(p.y0 + 4)
      << "\" text-anchor=\"end\" font-size=\"10\">" << y_label << "</text>\n";
}

void emit_bar(std::ostringstream& out, double x, double w, double y, double base,
              const char* color) {
  out << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\""
      << format_number(w) << "\" height=\"" << format_number(base - y) << "\" fill=\"" << color
      << "\"/>\n";
}

}  // namespace

std::string render_bench_plot(const std::vector<BenchPlotSeries>& series) {
  const double width = 760, height = 320;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width)
      << "\" height=\"" << format_number(height) << "\" viewBox=\"0 0 " << format_number(width)
      << " " << format_number(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << format_number(width) << "\" height=\""
      << format_number(height) << "\" fill=\"#ffffff\"/>\n";

  double max_plan = 0.0, max_mission = 0.0;
  for (const BenchPlotSeries& s : series) {
    max_plan = std::max(max_plan, s.mean_plan_time + s.std_plan_time);
    max_mission = std::max(max_mission, std::max(s.mean_exec_time, s.mean_baseline_time));
  }
  const Panel left{60, 40, 280, 230, max_plan * 1.15};
  const Panel right{440, 40, 280, 230, max_mission * 1.15};
  emit_axes(out, left, "Planning time vs team size", "s");
  emit_axes(out, right, "Mission time: ours vs baseline", "s");

  const double n = static_cast<double>(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const BenchPlotSeries& s = series[i];
    const double slot_l = left.x0 + (i + 0.15) * left.w / n;
    const double slot_w = 0.7 * left.w / n;
    emit_bar(out, slot_l, slot_w, left.value_y(s.mean_plan_time), left.y0 + left.h, "#1f77b4");
    // std whisker
    const double cx = slot_l + slot_w / 2;
    out << "<line x1=\"" << format_number(cx) << "\" y1=\""
        << format_number(left.value_y(std::max(0.0, s.mean_plan_time - s.std_plan_time)))
        << "\" x2=\"" << format_number(cx) << "\" y2=\""
        << format_number(left.value_y(s.mean_plan_time + s.std_plan_time))
        << "\" stroke=\"#303030\"/>\n";
    out << "<text x=\"" << format_number(cx) << "\" y=\"" << format_number(left.y0 + left.h + 14)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << s.team_size << "</text>\n";

    const double slot_r = right.x0 + (i + 0.1) * right.w / n;
    const double bar_w = 0.38 * right.w / n;
    emit_bar(out, slot_r, bar_w, right.value_y(s.mean_exec_time), right.y0 + right.h, "#2ca02c");
    emit_bar(out, slot_r + bar_w + 1, bar_w, right.value_y(s.mean_baseline_time),
             right.y0 + right.h, "#d62728");
    out << "<text x=\"" << format_number(slot_r + bar_w) << "\" y=\""
        << format_number(right.y0 + right.h + 14) << "\" text-anchor=\"middle\" font-size=\"10\">"
        << s.team_size << "</text>\n";
  }
  out << "<rect x=\"" << format_number(right.x0 + 8) << "\" y=\"" << format_number(right.y0 + 6)
      << "\" width=\"10\" height=\"10\" fill=\"#2ca02c\"/>\n";
  out << "<text x=\"" << format_number(right.x0 + 22) << "\" y=\"" << format_number(right.y0 + 15)
      << "\" font-size=\"10\">simultaneous (ours)</text>\n";
  out << "<rect x=\"" << format_number(right.x0 + 8) << "\" y=\"" << format_number(right.y0 + 22)
      << "\" width=\"10\" height=\"10\" fill=\"#d62728\"/>\n";
  out << "<text x=\"" << format_number(right.x0 + 22) << "\" y=\"" << format_number(right.y0 + 31)
      << "\" font-size=\"10\">over the backbone</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace backbone
