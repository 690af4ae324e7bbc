#include "fireprox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fireprox/error.hpp"

namespace fireprox {

PointPx centroid(const BBox& b) { return {b.x + b.w / 2.0, b.y + b.h / 2.0}; }

double pixel_distance(PointPx p, PointPx q) { return std::hypot(p.x - q.x, p.y - q.y); }

CalibrationScale derive_scale(double ref_width_px, double ref_width_m) {
  if (!(std::isfinite(ref_width_px) && ref_width_px > 0.0)) {
    throw Error(ErrorKind::NonPositiveReference, "reference width in pixels must be finite and > 0");
  }
  if (!(std::isfinite(ref_width_m) && ref_width_m > 0.0)) {
    throw Error(ErrorKind::NonPositiveReference, "reference width in meters must be finite and > 0");
  }
  return {ref_width_px / ref_width_m, ScaleSource::ReferenceObject};
}

double to_meters(double distance_px, const CalibrationScale& scale) { return distance_px / scale.kappa; }

double normalized_area(double area_px, const FrameRecord& frame) {
  const double frame_area = frame.area_px();
  if (area_px > frame_area) {
    throw Error(ErrorKind::AreaExceedsFrame,
                "area " + std::to_string(area_px) + " exceeds frame area " + std::to_string(frame_area));
  }
  return area_px / frame_area;
}

double bbox_gap_distance(const BBox& a, const BBox& b) {
  // Per-axis separation between the intervals; zero when they overlap.
  const double gap_x = std::max({0.0, b.x - (a.x + a.w), a.x - (b.x + b.w)});
  const double gap_y = std::max({0.0, b.y - (a.y + a.h), a.y - (b.y + b.h)});
  return std::hypot(gap_x, gap_y);
}

double proximity_px(const BBox& fire, const BBox& object, ProximityMetric metric) {
  if (metric == ProximityMetric::BBoxGap) return bbox_gap_distance(fire, object);
  return pixel_distance(centroid(fire), centroid(object));
}

}  // namespace fireprox
