#pragma once

#include <complex>
#include <vector>

#include "textmark/image.hpp"

namespace textmark {

// Full (unnormalized) 2-D DFT of a real plane, row-major [v][u] where v is
// the row frequency and u the column frequency.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int width, int height)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height) {}

  int width() const { return width_; }
  int height() const { return height_; }

  std::complex<double>& at(int u, int v) { return data_[static_cast<std::size_t>(v) * width_ + u]; }
  const std::complex<double>& at(int u, int v) const {
    return data_[static_cast<std::size_t>(v) * width_ + u];
  }

  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::complex<double>> data_;
};

Spectrum forward_dft(const Plane& plane);

struct InverseDft {
  Plane plane;
  double max_imaginary = 0.0;
};

// Complex inverse (scaled by 1/(W*H)); reports the largest imaginary residue.
InverseDft inverse_dft_checked(const Spectrum& spectrum);

// Real part of the inverse. Throws DimensionError if the spectrum is not
// Hermitian to within 1e-9 in the spatial domain.
Plane inverse_dft(const Spectrum& spectrum);

// |X| sampled on the full grid, row-major like Spectrum.
std::vector<double> magnitudes(const Spectrum& spectrum);

}  // namespace textmark
