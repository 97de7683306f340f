#pragma once

#include <optional>
#include <string>
#include <vector>

#include "textmark/annulus.hpp"
#include "textmark/bits.hpp"
#include "textmark/image.hpp"
#include "textmark/key.hpp"
#include "textmark/spreading.hpp"

namespace textmark {

struct EmbedResult {
  RgbImage image;
  WatermarkKey key;  // input key plus original_dims, gamma and dmax
  double psnr = 0.0;
  double ssim = 0.0;
  std::size_t chips_used = 0;
  std::size_t capacity = 0;
  double gamma = 0.0;
  BitVector message;  // bits handed to the turbo encoder
};

// Folds the text, pads it with blanks to l/5 characters and embeds it.
// Throws LengthError if the folded text is longer than l/5 characters,
// CapacityError if the image cannot host the plan, RateError if the payload
// cannot be rate matched to L_c.
EmbedResult embed(const RgbImage& image, const std::string& text, const WatermarkKey& key);

enum class GeometryHint { Auto, Rescale, Crop };

struct SyncReport {
  bool resized = false;
  bool padded = false;
  Dims received_dims;
  double rotation_correction = 0.0;  // degrees applied to undo the attack
  double pilot_correlation = 0.0;
  double threshold = 0.0;
  bool sync_failure = false;
};

struct AlignedLuma {
  Plane luma;
  SyncReport report;
};

// Brings a received luminance plane back onto the embedding grid.
AlignedLuma resynchronize(const Plane& luma, const WatermarkKey& key,
                          GeometryHint hint = GeometryHint::Auto);

struct ExtractResult {
  std::string text;
  BitVector bits;            // l payload bits
  BitVector hard_decisions;  // per coded bit, straight from despreading
  double confidence = 0.0;   // mean |LLR| over the coded word
  double snr = 0.0;          // mean |projection| / robust scale
  bool low_confidence = false;
  SyncReport sync;
  std::optional<bool> crc_ok;
};

ExtractResult extract(const RgbImage& image, const WatermarkKey& key,
                      GeometryHint hint = GeometryHint::Auto);

// Deterministic pieces of the scheme for one image size.
struct Layout {
  AnnulusSelection selection;
  std::vector<double> weights;
  SpreadingPlan plan;
  TurboConfig turbo;
};

Layout make_layout(const WatermarkKey& key, Dims dims);

}  // namespace textmark
