#include "fireprox/overlay.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

#include "fireprox/error.hpp"
#include "fireprox/geometry.hpp"

namespace fireprox {
namespace {

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string rect(const BBox& b, const char* cls, const char* color) {
  std::ostringstream out;
  out << "  <rect class=\"" << cls << "\" x=\"" << coord(b.x) << "\" y=\"" << coord(b.y)
      << "\" width=\"" << coord(b.w) << "\" height=\"" << coord(b.h) << "\" fill=\"none\" stroke=\""
      << color << "\" stroke-width=\"2\"/>\n";
  return out.str();
}

struct Segment {
  PointPx from;
  PointPx to;
  bool alerting = false;
  double distance_m = 0.0;
};

}  // namespace

std::string render_overlay(const FrameRecord& frame, const RiskReport& report,
                           const EngineConfig& config) {
  if (frame.frame_id != report.frame_id) {
    throw Error(ErrorKind::MismatchedReport, "report frame_id " + std::to_string(report.frame_id) +
                                                 " does not match frame " + std::to_string(frame.frame_id));
  }

  std::set<std::pair<std::size_t, std::size_t>> alerting;
  for (const auto& alert : report.alerts) alerting.emplace(alert.fire_index, alert.object_index);

  std::vector<Segment> segments;
  segments.reserve(report.pairs.size());
  for (const auto& pair : report.pairs) {
    if (pair.fire_index >= frame.fires.size() || pair.object_index >= frame.objects.size()) {
      throw Error(ErrorKind::MismatchedReport, "report pair (" + std::to_string(pair.fire_index) + ", " +
                                                   std::to_string(pair.object_index) +
                                                   ") has no matching detection in frame " +
                                                   std::to_string(frame.frame_id));
    }
    Segment s;
    s.from = centroid(frame.fires[pair.fire_index].bbox);
    s.to = centroid(frame.objects[pair.object_index].bbox);
    if (config.overlay_style == OverlayStyle::Horizontal) s.to.y = s.from.y;
    s.alerting = alerting.contains({pair.fire_index, pair.object_index});
    s.distance_m = pair.distance_m;
    segments.push_back(s);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << frame.width_px << "\" height=\""
      << frame.height_px << "\" viewBox=\"0 0 " << frame.width_px << ' ' << frame.height_px << "\">\n";
  for (const auto& fire : frame.fires) svg << rect(fire.bbox, "fire", "red");
  for (const auto& object : frame.objects) svg << rect(object.bbox, "object", "green");
  for (const auto& s : segments) {
    svg << "  <line class=\"" << (s.alerting ? "proximity alert" : "proximity") << "\" x1=\""
        << coord(s.from.x) << "\" y1=\"" << coord(s.from.y) << "\" x2=\"" << coord(s.to.x)
        << "\" y2=\"" << coord(s.to.y) << "\" stroke=\"red\" stroke-width=\""
        << (s.alerting ? 3 : 1) << "\"/>\n";
  }
  for (const auto& s : segments) {
    char label[64];
    std::snprintf(label, sizeof label, "%.2f m", s.distance_m);
    svg << "  <text class=\"distance\" x=\"" << coord((s.from.x + s.to.x) / 2.0) << "\" y=\""
        << coord((s.from.y + s.to.y) / 2.0 - 4.0) << "\" fill=\"red\" font-size=\"14\""
        << " text-anchor=\"middle\">" << label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fireprox
