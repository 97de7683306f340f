#pragma once

#include "textmark/image.hpp"

namespace textmark {

// Bicubic resampling of a real plane to the given dimensions.
Plane resize_plane(const Plane& plane, Dims dims);

// Counter-clockwise rotation about the center (degrees), same canvas,
// exposed regions filled by edge replication. Bicubic.
Plane rotate_plane(const Plane& plane, double degrees);

// Centered edge-replicated padding up to `dims` (each side >= input).
Plane pad_centered(const Plane& plane, Dims dims);

// Offset of a centered region of size `inner` inside `outer`.
int centered_offset(int outer, int inner);

}  // namespace textmark
