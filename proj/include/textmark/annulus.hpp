#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "textmark/dft.hpp"

namespace textmark {

struct FreqIndex {
  int u = 0;  // column, 1 <= u < W/2
  int v = 0;  // row, excluding DC and Nyquist rows
};

// Mid-frequency positions on the non-redundant half plane, in keyed order.
struct AnnulusSelection {
  int width = 0;
  int height = 0;
  double r_low = 0.0;
  double r_high = 0.0;
  std::vector<FreqIndex> positions;

  std::size_t size() const { return positions.size(); }
};

// Signed normalized frequency of row v / column u.
double signed_frequency(int index, int length) noexcept;
// Normalized radial frequency sqrt(fx^2 + fy^2) in cycles per pixel.
double radial_frequency(FreqIndex p, int width, int height) noexcept;

// Half-plane positions (no DC/Nyquist rows or columns) in raster order.
std::vector<FreqIndex> annulus_positions(int width, int height, double r_low, double r_high);

// Throws ParamError on bad radii, EmptySelectionError if nothing qualifies.
AnnulusSelection select_annulus(int width, int height, double r_low, double r_high,
                                std::uint64_t seed);

// magnitude' = max(0, magnitude + delta) with phase preserved; the conjugate
// mirror gets the conjugate so the inverse stays real.
void apply_magnitude_deltas(Spectrum& spectrum, const AnnulusSelection& selection,
                            std::span<const double> deltas);

std::vector<double> selected_magnitudes(const Spectrum& spectrum, const AnnulusSelection& selection);

}  // namespace textmark
