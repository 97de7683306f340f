#include "textmark/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "textmark/dft.hpp"
#include "textmark/errors.hpp"
#include "textmark/geometry.hpp"
#include "textmark/metrics.hpp"
#include "textmark/perceptual.hpp"
#include "textmark/text_codec.hpp"
#include "textmark/turbo.hpp"

namespace textmark {

namespace {

constexpr int kMinSide = 64;
constexpr double kSearchRange = 12.0;
constexpr double kSearchStep = 0.5;
constexpr double kSyncSigmas = 5.0;
constexpr double kLowConfidenceSnr = 2.0;
constexpr int kMaxStrengthIterations = 10;
constexpr double kPsnrTolerance = 0.02;

struct Rendered {
  RgbImage image;
  double psnr = 0.0;
};

// Magnitude at a fractional bin position, periodic bilinear interpolation.
double sample_bilinear(const std::vector<double>& mag, int width, int height, double u, double v) {
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double au = u - fu;
  const double av = v - fv;
  auto wrap = [](long long i, int n) { return static_cast<int>(((i % n) + n) % n); };
  const int u0 = wrap(static_cast<long long>(fu), width);
  const int v0 = wrap(static_cast<long long>(fv), height);
  const int u1 = (u0 + 1) % width;
  const int v1 = (v0 + 1) % height;
  auto at = [&](int uu, int vv) { return mag[static_cast<std::size_t>(vv) * width + uu]; };
  return (1 - au) * (1 - av) * at(u0, v0) + au * (1 - av) * at(u1, v0) + (1 - au) * av * at(u0, v1) +
         au * av * at(u1, v1);
}

struct PilotGeometry {
  std::vector<double> fx, fy;  // physical frequency of each pilot chip
  std::vector<double> weights;
};

PilotGeometry pilot_geometry(const Layout& layout) {
  PilotGeometry g;
  const std::size_t first = layout.plan.n_chips();
  const std::size_t n = layout.plan.total_chips() - first;
  g.fx.resize(n);
  g.fy.resize(n);
  g.weights.resize(n);
  const int w = layout.selection.width;
  const int h = layout.selection.height;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = layout.plan.coefficients[first + i];
    const FreqIndex p = layout.selection.positions[c];
    g.fx[i] = signed_frequency(p.u, w);
    g.fy[i] = signed_frequency(p.v, h);
    g.weights[i] = layout.weights[c];
  }
  return g;
}

// Pilot correlation if the received image is the embedded one rotated by
// `degrees` (counter-clockwise, display orientation).
double rotated_pilot_score(const std::vector<double>& mag, Dims dims, const PilotGeometry& g,
                           const Layout& layout, double degrees) {
  const double a = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  std::vector<double> values(g.fx.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double rx = c * g.fx[i] + s * g.fy[i];
    const double ry = -s * g.fx[i] + c * g.fy[i];
    values[i] = sample_bilinear(mag, dims.width, dims.height, rx * dims.width, ry * dims.height);
  }
  return pilot_correlation(values, layout.plan, g.weights);
}

struct AngleScore {
  double degrees = 0.0;
  double score = -1.0;
};

AngleScore search_rotation(const Plane& luma, const PilotGeometry& g, const Layout& layout) {
  const auto mag = magnitudes(forward_dft(luma));
  AngleScore best;
  auto consider = [&](double deg) {
    const double score = rotated_pilot_score(mag, luma.dims(), g, layout, deg);
    if (score > best.score) best = {deg, score};
  };
  const int steps = static_cast<int>(std::lround(kSearchRange / kSearchStep));
  consider(0.0);
  for (int i = -steps; i <= steps; ++i)
    if (i != 0) consider(i * kSearchStep);
  // Local refinement around the coarse optimum.
  for (double step : {0.1, 0.02}) {
    const double center = best.degrees;
    for (int i = -5; i <= 5; ++i)
      if (i != 0) consider(center + i * step);
  }
  return best;
}

}  // namespace

Layout make_layout(const WatermarkKey& key, Dims dims) {
  const EmbedConfig& c = key.config;
  validate(c);
  Layout layout;
  layout.selection = select_annulus(dims.width, dims.height, c.r_low, c.r_high, key.seed);
  layout.turbo = c.turbo_config();
  const std::size_t needed = (c.coded_length() + c.pilot_count()) * c.spreading;
  if (needed > layout.selection.size())
    throw CapacityError("image " + std::to_string(dims.width) + "x" + std::to_string(dims.height) +
                        " offers " + std::to_string(layout.selection.size()) +
                        " mid-frequency coefficients, the key needs " + std::to_string(needed));
  layout.plan = build_plan(key.seed, c.coded_length(), c.spreading, layout.selection.size(), c.pilot_count());
  layout.weights = csf_weight(layout.selection, c.csf);
  return layout;
}

EmbedResult embed(const RgbImage& image, const std::string& text, const WatermarkKey& key) {
  const EmbedConfig& cfg = key.config;
  validate(cfg);
  if (image.width() < kMinSide || image.height() < kMinSide)
    throw CapacityError("image must be at least 64x64 pixels");

  const Charset32& charset = Charset32::canonical();
  std::string folded = charset.fold(text);
  if (folded.size() > cfg.max_chars())
    throw LengthError("text has " + std::to_string(folded.size()) + " characters, capacity is " +
                      std::to_string(cfg.max_chars()));
  folded.resize(cfg.max_chars(), ' ');
  BitVector message = encode_text(folded, charset);
  if (cfg.crc) message = append_crc(message);

  const Layout layout = make_layout(key, image.dims());
  const BitVector coded = turbo_encode(message, layout.turbo, key.seed);

  const YCbCr ycc = rgb_to_ycbcr(image);
  const Spectrum spectrum = forward_dft(ycc.y);
  const std::vector<double> host = selected_magnitudes(spectrum, layout.selection);
  const double sqrt_s = std::sqrt(static_cast<double>(cfg.spreading));

  auto render = [&](double gamma) {
    const EmbedTargets targets{gamma, cfg.dmax_ratio * gamma * sqrt_s, cfg.informed};
    const auto deltas = spread_embed_targets(coded, layout.plan, host, layout.weights, targets);
    Spectrum marked = spectrum;
    apply_magnitude_deltas(marked, layout.selection, deltas);
    const Plane preliminary = inverse_dft(marked);
    const Plane mask = compute_variance_mask(preliminary, cfg.mask);
    const Plane final_luma = blend(ycc.y, preliminary, mask);
    Rendered r{ycbcr_to_rgb(final_luma, ycc.cb, ycc.cr), 0.0};
    r.psnr = psnr(image, r.image);
    return r;
  };

  double gamma = 0.0;
  Rendered best;
  if (cfg.gamma) {
    gamma = *cfg.gamma;
    best = render(gamma);
  } else {
    // Parseval: every unit of weighted chip amplitude costs 2 w^2 / (W H)^2
    // of luminance MSE (the mirror doubles it); the mask removes roughly half.
    const double wh = static_cast<double>(image.width()) * image.height();
    double sum_w2 = 0.0;
    for (std::size_t i = 0; i < layout.plan.total_chips(); ++i) {
      const double w = layout.weights[layout.plan.coefficients[i]];
      sum_w2 += w * w;
    }
    const double target_mse = 255.0 * 255.0 / std::pow(10.0, cfg.target_psnr / 10.0);
    gamma = std::sqrt(target_mse * wh * wh / (2.0 * sum_w2 * 0.5));

    double best_err = std::numeric_limits<double>::infinity();
    double best_gamma = gamma;
    double prev_log = std::numeric_limits<double>::quiet_NaN();
    double prev_psnr = 0.0;
    for (int it = 0; it < kMaxStrengthIterations; ++it) {
      Rendered r = render(gamma);
      const double current_psnr = r.psnr;
      const double err = current_psnr - cfg.target_psnr;
      if (std::abs(err) < best_err) {
        best_err = std::abs(err);
        best_gamma = gamma;
        best = std::move(r);
      }
      if (best_err < kPsnrTolerance) break;
      // PSNR falls about 20 dB per decade of gamma; refine with a secant.
      double slope = -20.0 / std::numbers::ln10;
      const double cur_log = std::log(gamma);
      if (!std::isnan(prev_log) && std::abs(cur_log - prev_log) > 1e-12) {
        const double est = (current_psnr - prev_psnr) / (cur_log - prev_log);
        if (std::isfinite(est) && est < 0.0)
          slope = std::clamp(est, -40.0 / std::numbers::ln10, -4.0 / std::numbers::ln10);
      }
      prev_log = cur_log;
      prev_psnr = current_psnr;
      gamma = std::exp(cur_log - err / slope);
    }
    gamma = best_gamma;
  }

  EmbedResult result;
  result.image = std::move(best.image);
  result.psnr = best.psnr;
  result.ssim = ssim(image, result.image);
  result.gamma = gamma;
  result.chips_used = layout.plan.total_chips();
  result.capacity = layout.selection.size();
  result.message = message;
  result.key = key;
  result.key.original_dims = image.dims();
  result.key.gamma = gamma;
  result.key.dmax = cfg.dmax_ratio * gamma * sqrt_s;
  return result;
}

AlignedLuma resynchronize(const Plane& luma, const WatermarkKey& key, GeometryHint hint) {
  if (!key.original_dims) throw ParamError("key carries no original dimensions; embed first");
  const Dims target = *key.original_dims;

  struct Candidate {
    Plane luma;
    bool resized = false;
    bool padded = false;
  };
  std::vector<Candidate> candidates;
  if (luma.dims() == target) {
    candidates.push_back({luma, false, false});
  } else {
    const bool fits = luma.width() <= target.width && luma.height() <= target.height;
    if (hint != GeometryHint::Crop || !fits) candidates.push_back({resize_plane(luma, target), true, false});
    if (hint != GeometryHint::Rescale && fits) candidates.push_back({pad_centered(luma, target), false, true});
  }

  AlignedLuma out;
  out.report.received_dims = luma.dims();
  if (!key.config.sync || key.config.pilot_blocks == 0) {
    out.luma = std::move(candidates.front().luma);
    out.report.resized = candidates.front().resized;
    out.report.padded = candidates.front().padded;
    return out;
  }

  const Layout layout = make_layout(key, target);
  const PilotGeometry geometry = pilot_geometry(layout);
  const double threshold = kSyncSigmas / std::sqrt(static_cast<double>(geometry.fx.size()));
  out.report.threshold = threshold;

  std::size_t best_index = 0;
  AngleScore best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const AngleScore s = search_rotation(candidates[i].luma, geometry, layout);
    if (s.score > best.score) {
      best = s;
      best_index = i;
    }
  }
  out.report.pilot_correlation = best.score;
  if (best.score < threshold) {
    out.report.sync_failure = true;
    best_index = 0;
    best.degrees = 0.0;
  }
  Candidate& chosen = candidates[best_index];
  out.report.resized = chosen.resized;
  out.report.padded = chosen.padded;
  out.report.rotation_correction = best.degrees == 0.0 ? 0.0 : -best.degrees;
  out.luma = best.degrees == 0.0 ? std::move(chosen.luma) : rotate_plane(chosen.luma, -best.degrees);
  return out;
}

ExtractResult extract(const RgbImage& image, const WatermarkKey& key, GeometryHint hint) {
  const EmbedConfig& cfg = key.config;
  AlignedLuma aligned = resynchronize(luminance(image), key, hint);
  const Layout layout = make_layout(key, *key.original_dims);
  const Spectrum spectrum = forward_dft(aligned.luma);
  const std::vector<double> received = selected_magnitudes(spectrum, layout.selection);
  const SoftWord soft = despread(received, layout.plan, layout.weights);
  const TurboDecodeResult decoded = turbo_decode_soft(soft.llrs, layout.turbo, key.seed);

  ExtractResult result;
  result.sync = aligned.report;
  result.bits = decoded.bits;
  if (cfg.crc) {
    result.crc_ok = check_crc(result.bits);
    result.bits.resize(cfg.payload_bits);
  }
  result.text = decode_bits(result.bits);
  result.hard_decisions.resize(soft.llrs.size());
  double sum_llr = 0.0;
  double sum_proj = 0.0;
  for (std::size_t i = 0; i < soft.llrs.size(); ++i) {
    result.hard_decisions[i] = soft.llrs[i] < 0.0 ? 1 : 0;
    sum_llr += std::abs(soft.llrs[i]);
    sum_proj += std::abs(soft.projection.values[i]);
  }
  const double n = static_cast<double>(std::max<std::size_t>(1, soft.llrs.size()));
  result.confidence = sum_llr / n;
  result.snr = sum_proj / n / soft.projection.sigma;
  result.low_confidence = result.snr < kLowConfidenceSnr;
  return result;
}

}  // namespace textmark
