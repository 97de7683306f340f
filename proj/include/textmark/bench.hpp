#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textmark/attacks.hpp"
#include "textmark/image.hpp"
#include "textmark/key.hpp"
#include "textmark/pipeline.hpp"

namespace textmark {

struct BenchImage {
  std::string name;  // pairing key for externally attacked images
  RgbImage image;
  std::string text;
};

struct BenchOptions {
  std::vector<AttackSpec> attacks;
  bool include_clean = true;
  // Externally attacked copies (e.g. AI inpainting), matched by file stem;
  // reported in a column named after the directory.
  std::optional<std::filesystem::path> external_dir;
  std::optional<std::filesystem::path> write_marked_dir;
  // Column label -> maximum mean BER %; "psnr" -> minimum mean PSNR.
  std::map<std::string, double> thresholds;
};

struct BenchRow {
  std::string image;
  std::string attack;
  double ber = 0.0;
  double psnr = 0.0;  // attacked vs original, when dimensions agree
  double ssim = 0.0;
  double confidence = 0.0;
  bool low_confidence = false;
  SyncReport sync;
  std::string error;  // non-empty when the row failed
};

struct EmbedRow {
  std::string image;
  double psnr = 0.0;
  double ssim = 0.0;
  double gamma = 0.0;
  std::string error;
};

struct BenchReport {
  std::vector<EmbedRow> embeds;
  std::vector<BenchRow> rows;
  std::vector<std::string> columns;  // attack labels in grid order
  std::vector<std::string> violations;

  // Mean BER over the rows of one column that did not fail.
  std::optional<double> mean_ber(const std::string& column) const;
  double mean_psnr() const;
  double mean_ssim() const;

  std::string to_json() const;
  std::string to_table() const;
};

// Embeds once per image with key.seed (each image uses the same key, with
// dims recorded per image), applies every attack, extracts and records a
// row. Per-row failures are captured in BenchRow::error.
BenchReport run_bench(const std::vector<BenchImage>& images, const WatermarkKey& key,
                      const BenchOptions& options);

// Default attack grid of the evaluation tables.
std::vector<AttackSpec> default_attack_grid();

struct BenchConfig {
  std::filesystem::path images_dir;
  std::filesystem::path texts_file;  // one description per line, paired by sorted filename
  std::optional<std::filesystem::path> key_file;
  std::optional<Preset> preset;
  std::uint64_t seed = 1;
  BenchOptions options;
  std::optional<std::filesystem::path> report_json;
  std::optional<std::filesystem::path> report_table;
};

// JSON bench configuration. Throws ParamError/IoError.
BenchConfig load_bench_config(const std::filesystem::path& path);
std::vector<BenchImage> load_bench_images(const BenchConfig& config);

}  // namespace textmark
