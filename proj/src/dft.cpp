#include "textmark/dft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "textmark/errors.hpp"

namespace textmark {

namespace {

// FFTW's planner is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using PlanHandle = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

}  // namespace

Spectrum forward_dft(const Plane& plane) {
  const int w = plane.width();
  const int h = plane.height();
  const int half = w / 2 + 1;
  std::vector<double> in = plane.data();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(h) * half);
  PlanHandle plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_2d(h, w, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());

  Spectrum spectrum(w, h);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < half; ++u) spectrum.at(u, v) = out[static_cast<std::size_t>(v) * half + u];
    for (int u = half; u < w; ++u)
      spectrum.at(u, v) = std::conj(out[static_cast<std::size_t>((h - v) % h) * half + (w - u)]);
  }
  return spectrum;
}

InverseDft inverse_dft_checked(const Spectrum& spectrum) {
  const int w = spectrum.width();
  const int h = spectrum.height();
  std::vector<std::complex<double>> buf = spectrum.data();
  PlanHandle plan;
  {
    std::lock_guard lock(planner_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    plan.reset(fftw_plan_dft_2d(h, w, p, p, FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());

  InverseDft result{Plane(w, h), 0.0};
  const double scale = 1.0 / (static_cast<double>(w) * h);
  auto& out = result.plane.data();
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out[i] = buf[i].real() * scale;
    result.max_imaginary = std::max(result.max_imaginary, std::abs(buf[i].imag() * scale));
  }
  return result;
}

Plane inverse_dft(const Spectrum& spectrum) {
  InverseDft r = inverse_dft_checked(spectrum);
  if (r.max_imaginary >= 1e-9)
    throw DimensionError("spectrum is not Hermitian: imaginary residue " + std::to_string(r.max_imaginary));
  return std::move(r.plane);
}

std::vector<double> magnitudes(const Spectrum& spectrum) {
  std::vector<double> m(spectrum.data().size());
  std::transform(spectrum.data().begin(), spectrum.data().end(), m.begin(),
                 [](const std::complex<double>& c) { return std::abs(c); });
  return m;
}

}  // namespace textmark
