#pragma once

#include <vector>

#include "textmark/annulus.hpp"
#include "textmark/image.hpp"

namespace textmark {

struct CsfParams {
  double pixels_per_degree = 32.0;  // nominal viewing geometry
  double w_min = 0.25;
  double w_max = 4.0;
};

// Mannos-Sakrison contrast sensitivity at f cycles/degree.
double mannos_sakrison(double cycles_per_degree) noexcept;

// Unnormalized weight for one radial frequency (cycles/pixel):
// clamp(1 / A(f), w_min, w_max).
double csf_raw_weight(double radial, const CsfParams& params) noexcept;

// Per-position weights, mean-normalized to 1 over the selection.
std::vector<double> csf_weight(const AnnulusSelection& selection, const CsfParams& params = {});

struct MaskParams {
  int window = 9;
  double m_lo = 0.2;
  double m_hi = 1.0;
  double variance_saturation = 400.0;
};

// Local variance over a window (edge-replicated), mapped to
// m_lo + (m_hi - m_lo) * min(1, var / variance_saturation).
Plane compute_variance_mask(const Plane& marked, const MaskParams& params = {});

Plane local_variance(const Plane& plane, int window);

// (1 - M) * Y + M * Yw'. Throws DimensionError on mismatch.
Plane blend(const Plane& original, const Plane& marked, const Plane& mask);

}  // namespace textmark
