#pragma once

#include "fireprox/types.hpp"

namespace fireprox {

/// Checks every invariant of an untrusted record and returns it unchanged.
/// Throws Error with kind NonFiniteField, ConfidenceOutOfRange,
/// NegativeDimension, ZeroFrameArea, AreaExceedsFrame (mask larger than the
/// frame) or NonPositiveReference (bad scale override). The message names the
/// offending field, e.g. "objects[3].bbox.w".
const FrameRecord& validate_frame(const FrameRecord& record);

}  // namespace fireprox
