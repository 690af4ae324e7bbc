#pragma once

#include "fireprox/types.hpp"

namespace fireprox {

struct PointPx {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PointPx&, const PointPx&) = default;
};

enum class ProximityMetric { Centroid, BBoxGap };

PointPx centroid(const BBox& b);

double pixel_distance(PointPx p, PointPx q);

/// kappa = reference width in pixels / reference width in meters.
/// Throws NonPositiveReference unless both are finite and > 0.
CalibrationScale derive_scale(double ref_width_px, double ref_width_m);

double to_meters(double distance_px, const CalibrationScale& scale);

/// area / frame area. Throws AreaExceedsFrame when area > frame area.
double normalized_area(double area_px, const FrameRecord& frame);

/// Shortest distance between two rectangles; 0 when they touch or overlap.
double bbox_gap_distance(const BBox& a, const BBox& b);

/// Distance in pixels between a fire box and an object box under `metric`.
double proximity_px(const BBox& fire, const BBox& object, ProximityMetric metric);

}  // namespace fireprox
