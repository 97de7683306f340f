// textmark: keygen, embed, extract, attack, bench and synth from the shell.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "textmark/attacks.hpp"
#include "textmark/bench.hpp"
#include "textmark/errors.hpp"
#include "textmark/image_io.hpp"
#include "textmark/key.hpp"
#include "textmark/metrics.hpp"
#include "textmark/pipeline.hpp"
#include "textmark/synthetic.hpp"
#include "textmark/text_codec.hpp"

namespace fs = std::filesystem;
using namespace textmark;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kThreshold = 1, kValidation = 2, kCapacity = 3, kIo = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Capacity:
    case ErrorKind::Rate: return kCapacity;
    case ErrorKind::Io: return kIo;
    default: return kValidation;
  }
}

std::string default_key_path() {
  const char* dir = std::getenv("TEXTMARK_KEY_DIR");
  return ((dir && *dir) ? fs::path(dir) : fs::path(".")) / "textmark_key.json";
}

struct Overrides {
  std::string preset;
  std::optional<std::size_t> l, s, n_chips, pilots;
  std::optional<double> r_low, r_high, strength, target_psnr;
  bool crc = false;
  bool no_sync = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "p1000s128, p1500s128 or p3000s64")
        ->check(CLI::IsMember({"p1000s128", "p1500s128", "p3000s64"}));
    cmd->add_option("--l", l, "payload bits (5 per character)");
    cmd->add_option("--s", s, "spreading factor");
    cmd->add_option("--n-chips", n_chips, "data chips");
    cmd->add_option("--pilots", pilots, "pilot blocks for resynchronization");
    cmd->add_option("--r-low", r_low, "inner annulus radius (cycles/pixel)");
    cmd->add_option("--r-high", r_high, "outer annulus radius (cycles/pixel)");
    cmd->add_option("--strength", strength, "fixed gamma instead of the PSNR-targeted search");
    cmd->add_option("--target-psnr", target_psnr, "PSNR the strength search aims for");
    cmd->add_flag("--crc", crc, "append CRC-16 to the payload");
    cmd->add_flag("--no-sync", no_sync, "omit pilot blocks and geometric resynchronization");
  }

  void apply(EmbedConfig& c) const {
    if (!preset.empty()) c = preset_config(*parse_preset(preset));
    if (l) c.payload_bits = *l;
    if (s) c.spreading = *s;
    if (n_chips) c.n_chips = *n_chips;
    if (pilots) c.pilot_blocks = *pilots;
    if (r_low) c.r_low = *r_low;
    if (r_high) c.r_high = *r_high;
    if (strength) c.gamma = *strength;
    if (target_psnr) c.target_psnr = *target_psnr;
    if (crc) c.crc = true;
    if (no_sync) c.sync = false;
    validate(c);
  }
};

std::string read_text(const std::string& literal, const std::string& file) {
  if (file.empty()) return literal;
  std::ifstream in(file);
  if (!in) throw IoError("cannot read text file " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

json sync_json(const SyncReport& s) {
  return {{"resized", s.resized},
          {"padded", s.padded},
          {"received_dims", {s.received_dims.width, s.received_dims.height}},
          {"rotation_correction", s.rotation_correction},
          {"pilot_correlation", s.pilot_correlation},
          {"threshold", s.threshold},
          {"sync_failure", s.sync_failure}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text watermarking of images in the DFT magnitude domain"};
  app.require_subcommand(1);
  std::string report = "text";
  app.add_option("--report", report, "output style")->check(CLI::IsMember({"text", "structured"}));

  // keygen
  auto* keygen = app.add_subcommand("keygen", "write a fresh key file");
  std::string key_out = default_key_path();
  std::optional<std::uint64_t> seed;
  Overrides keygen_over;
  keygen->add_option("--out", key_out, "key file to write");
  keygen->add_option("--seed", seed, "fixed seed instead of a random one");
  keygen_over.attach(keygen);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "embed a text into an image");
  std::string embed_in, embed_out, text_literal, text_file, key_path = default_key_path();
  std::optional<double> embed_strength;
  embed_cmd->add_option("image", embed_in, "input image")->required();
  auto* text_opt = embed_cmd->add_option("--text", text_literal, "text to embed");
  embed_cmd->add_option("--text-file", text_file, "file holding the text")->excludes(text_opt);
  embed_cmd->add_option("--key", key_path, "key file (dimensions are written back)");
  embed_cmd->add_option("--out", embed_out, "watermarked PNG")->required();
  embed_cmd->add_option("--strength", embed_strength, "fixed gamma for this image");

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "recover the text from an image");
  std::string extract_in, extract_out, geometry = "auto";
  extract_cmd->add_option("image", extract_in, "image to decode")->required();
  extract_cmd->add_option("--key", key_path, "key file");
  extract_cmd->add_option("--out", extract_out, "also write the structured result here");
  extract_cmd->add_option("--geometry", geometry, "size mismatch handling")
      ->check(CLI::IsMember({"auto", "rescale", "crop"}));

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "apply one processing step");
  std::string attack_in, attack_spec, attack_out, attack_original;
  std::optional<std::uint64_t> attack_seed;
  attack_cmd->add_option("image", attack_in, "watermarked image")->required();
  attack_cmd->add_option("spec", attack_spec, "kind:param, e.g. jpeg:70, rotate:5, splice:10")->required();
  attack_cmd->add_option("--out", attack_out, "attacked image")->required();
  attack_cmd->add_option("--original", attack_original, "unmarked original (splicing)");
  attack_cmd->add_option("--seed", attack_seed, "seed for noise and splicing");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run an attack grid over a directory of images");
  std::string bench_config;
  std::optional<std::uint64_t> bench_seed;
  bench_cmd->add_option("config", bench_config, "bench configuration (JSON)")->required();
  bench_cmd->add_option("--key", key_path, "key file (overrides preset/seed of the config)");
  bench_cmd->add_option("--seed", bench_seed, "key seed when no key file is given");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic test corpus");
  std::string synth_dir;
  int synth_count = 20, synth_width = 1024, synth_height = 1024;
  std::size_t synth_chars = 200;
  std::uint64_t synth_seed = 1;
  synth_cmd->add_option("--out", synth_dir, "output directory (images/ and texts.txt)")->required();
  synth_cmd->add_option("--count", synth_count, "number of images")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--width", synth_width)->check(CLI::Range(64, 16384));
  synth_cmd->add_option("--height", synth_height)->check(CLI::Range(64, 16384));
  synth_cmd->add_option("--chars", synth_chars, "caption length");
  synth_cmd->add_option("--seed", synth_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  const bool structured = report == "structured";
  try {
    if (*keygen) {
      WatermarkKey key;
      key.seed = seed ? *seed : random_seed();
      keygen_over.apply(key.config);
      save_key(key, key_out);
      if (structured) {
        std::cout << key_to_json(key);
      } else {
        std::cout << "wrote " << key_out << " (l=" << key.config.payload_bits << ", s=" << key.config.spreading
                  << ", n_chips=" << key.config.n_chips << ")\n";
      }
      return kOk;
    }

    if (*embed_cmd) {
      WatermarkKey key = load_key(key_path);
      if (embed_strength) key.config.gamma = *embed_strength;
      const RgbImage image = load_image(embed_in);
      const std::string text = read_text(text_literal, text_file);
      EmbedResult result = embed(image, text, key);
      save_image(result.image, embed_out);
      // Only the embedding record changes; a per-run strength stays out of the key.
      WatermarkKey stored = load_key(key_path);
      stored.original_dims = result.key.original_dims;
      stored.gamma = result.key.gamma;
      stored.dmax = result.key.dmax;
      save_key(stored, key_path);
      if (structured) {
        std::cout << json{{"out", embed_out}, {"psnr", result.psnr}, {"ssim", result.ssim}, {"gamma", result.gamma},
                          {"chips_used", result.chips_used}, {"capacity", result.capacity}}
                         .dump(2)
                  << '\n';
      } else {
        std::printf("PSNR %.2f dB  SSIM %.4f  gamma %.4f  chips %zu/%zu\n", result.psnr, result.ssim, result.gamma,
                    result.chips_used, result.capacity);
      }
      return kOk;
    }

    if (*extract_cmd) {
      const WatermarkKey key = load_key(key_path);
      const GeometryHint hint = geometry == "rescale" ? GeometryHint::Rescale
                                : geometry == "crop"  ? GeometryHint::Crop
                                                      : GeometryHint::Auto;
      const ExtractResult r = extract(load_image(extract_in), key, hint);
      json j{{"text", r.text},
             {"confidence", r.confidence},
             {"snr", r.snr},
             {"low_confidence", r.low_confidence},
             {"sync", sync_json(r.sync)}};
      if (r.crc_ok) j["crc_ok"] = *r.crc_ok;
      if (!extract_out.empty()) {
        std::ofstream out(extract_out);
        if (!(out << j.dump(2) << '\n')) throw IoError("cannot write " + extract_out);
      }
      if (structured) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << r.text << '\n';
        std::fprintf(stderr, "confidence %.2f  snr %.2f%s%s%s\n", r.confidence, r.snr,
                     r.low_confidence ? "  LOW CONFIDENCE" : "", r.sync.sync_failure ? "  SYNC FAILURE" : "",
                     r.crc_ok ? (*r.crc_ok ? "  crc ok" : "  CRC MISMATCH") : "");
        if (r.sync.resized || r.sync.padded || r.sync.rotation_correction != 0.0)
          std::fprintf(stderr, "sync: %s%s rotation %+.2f deg, pilot %.3f (threshold %.3f)\n",
                       r.sync.resized ? "rescaled" : "", r.sync.padded ? "padded" : "", r.sync.rotation_correction,
                       r.sync.pilot_correlation, r.sync.threshold);
      }
      return kOk;
    }

    if (*attack_cmd) {
      AttackSpec spec = AttackSpec::parse(attack_spec);
      if (attack_seed) spec.seed = *attack_seed;
      const RgbImage image = load_image(attack_in);
      std::optional<RgbImage> original;
      if (!attack_original.empty()) original = load_image(attack_original);
      const RgbImage out = apply_attack(spec, image, original ? &*original : nullptr);
      save_image(out, attack_out);
      if (structured) {
        json j{{"attack", spec.label()}, {"out", attack_out}};
        if (out.dims() == image.dims()) j["psnr"] = psnr(image, out);
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << spec.label() << " -> " << attack_out << '\n';
      }
      return kOk;
    }

    if (*bench_cmd) {
      const BenchConfig cfg = load_bench_config(bench_config);
      WatermarkKey key;
      if (bench_cmd->count("--key")) {
        key = load_key(key_path);
      } else if (cfg.key_file) {
        key = load_key(*cfg.key_file);
      } else {
        key.seed = bench_seed.value_or(cfg.seed);
        if (cfg.preset) key.config = preset_config(*cfg.preset);
      }
      const auto images = load_bench_images(cfg);
      const BenchReport rep = run_bench(images, key, cfg.options);
      if (cfg.report_json) {
        std::ofstream out(*cfg.report_json);
        if (!(out << rep.to_json())) throw IoError("cannot write " + cfg.report_json->string());
      }
      if (cfg.report_table) {
        std::ofstream out(*cfg.report_table);
        if (!(out << rep.to_table())) throw IoError("cannot write " + cfg.report_table->string());
      }
      std::cout << (structured ? rep.to_json() : rep.to_table());
      return rep.violations.empty() ? kOk : kThreshold;
    }

    if (*synth_cmd) {
      const fs::path dir(synth_dir);
      fs::create_directories(dir / "images");
      std::ofstream texts(dir / "texts.txt");
      if (!texts) throw IoError("cannot write " + (dir / "texts.txt").string());
      for (int i = 0; i < synth_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "img%03d.png", i);
        save_image(synthetic_scene({synth_width, synth_height}, synth_seed + i), dir / "images" / name);
        texts << synthetic_caption(synth_seed + i, synth_chars) << '\n';
      }
      std::cout << "wrote " << synth_count << " images to " << (dir / "images").string() << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
