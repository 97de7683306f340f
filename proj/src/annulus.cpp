#include "textmark/annulus.hpp"

#include <cmath>
#include <string>

#include "textmark/errors.hpp"
#include "textmark/keyed_rng.hpp"

namespace textmark {

double signed_frequency(int index, int length) noexcept {
  const int k = index <= length / 2 ? index : index - length;
  return static_cast<double>(k) / static_cast<double>(length);
}

double radial_frequency(FreqIndex p, int width, int height) noexcept {
  return std::hypot(signed_frequency(p.u, width), signed_frequency(p.v, height));
}

std::vector<FreqIndex> annulus_positions(int width, int height, double r_low, double r_high) {
  std::vector<FreqIndex> out;
  // Column W/2 is the Nyquist column for even W; (W-1)/2 is the last
  // non-self-conjugate column either way.
  const int last_col = (width - 1) / 2;
  for (int v = 1; v < height; ++v) {
    if (height % 2 == 0 && v == height / 2) continue;
    for (int u = 1; u <= last_col; ++u) {
      const double rho = radial_frequency({u, v}, width, height);
      if (rho >= r_low && rho < r_high) out.push_back({u, v});
    }
  }
  return out;
}

AnnulusSelection select_annulus(int width, int height, double r_low, double r_high,
                                std::uint64_t seed) {
  if (!(r_low > 0.0 && r_low < r_high && r_high <= 0.5))
    throw ParamError("annulus radii must satisfy 0 < r_low < r_high <= 0.5");
  if (width < 1 || height < 1) throw ParamError("image dimensions must be positive");
  auto raster = annulus_positions(width, height, r_low, r_high);
  if (raster.empty())
    throw EmptySelectionError("annulus [" + std::to_string(r_low) + ", " + std::to_string(r_high) +
                              ") holds no coefficients at " + std::to_string(width) + "x" +
                              std::to_string(height));
  AnnulusSelection sel{width, height, r_low, r_high, {}};
  const auto perm = keyed_permutation(seed, Stream::Annulus, raster.size());
  sel.positions.reserve(raster.size());
  for (auto i : perm) sel.positions.push_back(raster[i]);
  return sel;
}

void apply_magnitude_deltas(Spectrum& spectrum, const AnnulusSelection& selection,
                            std::span<const double> deltas) {
  if (deltas.size() > selection.size()) throw DimensionError("more deltas than selected positions");
  if (spectrum.width() != selection.width || spectrum.height() != selection.height)
    throw DimensionError("selection does not match spectrum dimensions");
  const int w = spectrum.width();
  const int h = spectrum.height();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] == 0.0) continue;
    const FreqIndex p = selection.positions[i];
    auto& x = spectrum.at(p.u, p.v);
    const double mag = std::abs(x);
    const double new_mag = std::max(0.0, mag + deltas[i]);
    x = mag > 0.0 ? x * (new_mag / mag) : std::complex<double>(new_mag, 0.0);
    spectrum.at((w - p.u) % w, (h - p.v) % h) = std::conj(x);
  }
}

std::vector<double> selected_magnitudes(const Spectrum& spectrum, const AnnulusSelection& selection) {
  std::vector<double> m(selection.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const FreqIndex p = selection.positions[i];
    m[i] = std::abs(spectrum.at(p.u, p.v));
  }
  return m;
}

}  // namespace textmark
