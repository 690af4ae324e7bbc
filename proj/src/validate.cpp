#include "fireprox/validate.hpp"

#include <cmath>
#include <string>

#include "fireprox/error.hpp"

namespace fireprox {
namespace {

std::string indexed(const char* list, std::size_t i, const char* field) {
  return std::string(list) + "[" + std::to_string(i) + "]." + field;
}

void check_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteField, field + " is not finite");
}

void check_bbox(const BBox& b, const char* list, std::size_t i) {
  check_finite(b.x, indexed(list, i, "bbox.x"));
  check_finite(b.y, indexed(list, i, "bbox.y"));
  check_finite(b.w, indexed(list, i, "bbox.w"));
  check_finite(b.h, indexed(list, i, "bbox.h"));
  if (b.w < 0.0) throw Error(ErrorKind::NegativeDimension, indexed(list, i, "bbox.w") + " is negative");
  if (b.h < 0.0) throw Error(ErrorKind::NegativeDimension, indexed(list, i, "bbox.h") + " is negative");
}

void check_confidence(double c, const char* list, std::size_t i) {
  const auto field = indexed(list, i, "confidence");
  check_finite(c, field);
  if (c < 0.0 || c > 1.0) {
    throw Error(ErrorKind::ConfidenceOutOfRange, field + " = " + std::to_string(c) + " not in [0, 1]");
  }
}

}  // namespace

const FrameRecord& validate_frame(const FrameRecord& record) {
  if (record.width_px == 0 || record.height_px == 0) {
    throw Error(ErrorKind::ZeroFrameArea, "width_px * height_px must be > 0");
  }
  if (record.scale_override) {
    const double k = record.scale_override->kappa;
    check_finite(k, "scale_px_per_m");
    if (k <= 0.0) throw Error(ErrorKind::NonPositiveReference, "scale_px_per_m must be > 0");
  }
  for (std::size_t i = 0; i < record.fires.size(); ++i) {
    const auto& fire = record.fires[i];
    check_bbox(fire.bbox, "fires", i);
    check_confidence(fire.confidence, "fires", i);
    if (fire.mask_area_px) {
      const auto field = indexed("fires", i, "mask_area_px");
      check_finite(*fire.mask_area_px, field);
      if (*fire.mask_area_px < 0.0) throw Error(ErrorKind::NegativeDimension, field + " is negative");
      if (*fire.mask_area_px > record.area_px()) {
        throw Error(ErrorKind::AreaExceedsFrame, field + " exceeds the frame area");
      }
    }
  }
  for (std::size_t j = 0; j < record.objects.size(); ++j) {
    const auto& object = record.objects[j];
    check_bbox(object.bbox, "objects", j);
    check_confidence(object.confidence, "objects", j);
    if (object.class_label.empty()) {
      throw Error(ErrorKind::SchemaViolation, indexed("objects", j, "class") + " is empty");
    }
  }
  return record;
}

}  // namespace fireprox
