#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "textmark/image.hpp"
#include "textmark/perceptual.hpp"
#include "textmark/turbo.hpp"

namespace textmark {

inline constexpr int kKeyFormatVersion = 1;

struct TurboParams {
  unsigned feedback_poly = 013;
  unsigned feedforward_poly = 015;
  int constraint_length = 4;
  int iterations = 8;
  double max_rate = 0.95;
};

// Everything the encoder and decoder must agree on, apart from the seed.
struct EmbedConfig {
  std::size_t payload_bits = 1000;  // l, 5 bits per character
  std::size_t spreading = 128;      // s
  std::size_t n_chips = 192000;     // data chips; L_c = n_chips / s
  std::size_t pilot_blocks = 16;
  double r_low = 0.08;
  double r_high = 0.36;
  double target_psnr = 34.3;         // drives the per-image strength search
  std::optional<double> gamma;       // fixed strength, disables the search
  double dmax_ratio = 2.0;           // D_max = dmax_ratio * gamma * sqrt(s)
  MaskParams mask;
  CsfParams csf;
  TurboParams turbo;
  bool crc = false;
  bool informed = true;
  bool sync = true;

  std::size_t coded_length() const { return spreading ? n_chips / spreading : 0; }
  std::size_t message_bits() const { return payload_bits + (crc ? 16 : 0); }
  std::size_t max_chars() const { return payload_bits / 5; }
  std::size_t pilot_count() const { return sync ? pilot_blocks : 0; }
  TurboConfig turbo_config() const;
};

// Throws ParamError (or RateError/OrderError) on inconsistent settings.
void validate(const EmbedConfig& config);

enum class Preset { P1000S128, P1500S128, P3000S64 };

std::optional<Preset> parse_preset(const std::string& name);
const char* to_string(Preset preset);
EmbedConfig preset_config(Preset preset);

struct WatermarkKey {
  std::uint64_t seed = 0;
  EmbedConfig config;
  std::optional<Dims> original_dims;  // recorded at embed time
  std::optional<double> gamma;        // strength used at embed time
  std::optional<double> dmax;

  // Target projection used for LLR scaling; falls back to 1 when unknown.
  double target() const;
};

std::string key_to_json(const WatermarkKey& key);
WatermarkKey key_from_json(const std::string& text);

void save_key(const WatermarkKey& key, const std::filesystem::path& path);
WatermarkKey load_key(const std::filesystem::path& path);

std::uint64_t random_seed();

}  // namespace textmark
