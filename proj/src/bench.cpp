#include "textmark/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "textmark/errors.hpp"
#include "textmark/image_io.hpp"
#include "textmark/keyed_rng.hpp"
#include "textmark/metrics.hpp"
#include "textmark/text_codec.hpp"

namespace textmark {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kClean = "clean";

std::optional<fs::path> find_external(const fs::path& dir, const std::string& name) {
  for (const char* ext : {".png", ".jpg", ".jpeg", ".PNG", ".JPG"}) {
    const fs::path p = dir / (name + ext);
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

BenchRow measure(const std::string& image, const std::string& column, const RgbImage& attacked,
                 const RgbImage& original, const BitVector& sent, const WatermarkKey& key) {
  BenchRow row;
  row.image = image;
  row.attack = column;
  if (attacked.dims() == original.dims()) {
    row.psnr = psnr(original, attacked);
    row.ssim = ssim(original, attacked);
  }
  const ExtractResult out = extract(attacked, key);
  row.ber = ber(sent, out.bits);
  row.confidence = out.confidence;
  row.low_confidence = out.low_confidence;
  row.sync = out.sync;
  return row;
}

std::string fmt(const char* pattern, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<AttackSpec> default_attack_grid() {
  std::vector<AttackSpec> grid;
  for (const char* s : {"jpeg:70", "jpeg:30", "jpeg:5", "noise:5", "noise:20", "resize:0.7", "resize:1.7",
                        "crop:10", "crop:20", "crop:30", "rotate:5", "rotate:10", "splice:10", "splice:15",
                        "splice:25"})
    grid.push_back(AttackSpec::parse(s));
  return grid;
}

BenchReport run_bench(const std::vector<BenchImage>& images, const WatermarkKey& key,
                      const BenchOptions& options) {
  if (images.empty()) throw ParamError("bench needs at least one image");
  if (options.attacks.empty() && !options.include_clean && !options.external_dir && !options.write_marked_dir)
    throw ParamError("bench needs at least one attack");

  BenchReport report;
  if (options.include_clean) report.columns.push_back(kClean);
  for (const auto& a : options.attacks) report.columns.push_back(a.label());
  std::string external_column;
  if (options.external_dir) {
    external_column = "ext:" + options.external_dir->filename().string();
    report.columns.push_back(external_column);
  }
  if (options.write_marked_dir) fs::create_directories(*options.write_marked_dir);

  for (std::size_t i = 0; i < images.size(); ++i) {
    const BenchImage& item = images[i];
    EmbedRow erow{item.name, 0.0, 0.0, 0.0, {}};
    std::optional<EmbedResult> marked;
    try {
      marked = embed(item.image, item.text, key);
      erow.psnr = marked->psnr;
      erow.ssim = marked->ssim;
      erow.gamma = marked->gamma;
      if (options.write_marked_dir) save_image(marked->image, *options.write_marked_dir / (item.name + ".png"));
    } catch (const std::exception& e) {
      erow.error = e.what();
    }
    report.embeds.push_back(erow);

    auto run_row = [&](const std::string& column, auto&& attack) {
      BenchRow row;
      row.image = item.name;
      row.attack = column;
      if (!marked) {
        row.error = "embedding failed: " + erow.error;
        report.rows.push_back(row);
        return;
      }
      BitVector sent = marked->message;
      sent.resize(key.config.payload_bits);
      try {
        row = measure(item.name, column, attack(), item.image, sent, marked->key);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      report.rows.push_back(row);
    };

    if (options.include_clean) run_row(kClean, [&] { return marked->image; });
    for (const auto& spec : options.attacks) {
      AttackSpec per_image = spec;
      per_image.seed = mix64(spec.seed + i + 1);
      run_row(spec.label(), [&] { return apply_attack(per_image, marked->image, &item.image); });
    }
    if (options.external_dir) {
      run_row(external_column, [&] {
        const auto path = find_external(*options.external_dir, item.name);
        if (!path) throw IoError("no externally attacked copy of " + item.name);
        return load_image(*path);
      });
    }
  }

  for (const auto& [label, limit] : options.thresholds) {
    if (label == "psnr") {
      if (report.mean_psnr() < limit)
        report.violations.push_back("mean PSNR " + fmt("%.2f", report.mean_psnr()) + " dB below " + fmt("%.2f", limit));
      continue;
    }
    const auto mean = report.mean_ber(label);
    if (!mean)
      report.violations.push_back("no successful rows for " + label);
    else if (*mean > limit)
      report.violations.push_back(label + " mean BER " + fmt("%.3f", *mean) + "% above " + fmt("%.3f", limit) + "%");
  }
  return report;
}

std::optional<double> BenchReport::mean_ber(const std::string& column) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (r.attack != column || !r.error.empty()) continue;
    sum += r.ber;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

double BenchReport::mean_psnr() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : embeds)
    if (e.error.empty()) sum += e.psnr, ++n;
  return n ? sum / static_cast<double>(n) : 0.0;
}

double BenchReport::mean_ssim() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : embeds)
    if (e.error.empty()) sum += e.ssim, ++n;
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::string BenchReport::to_json() const {
  json j;
  j["embeds"] = json::array();
  for (const auto& e : embeds) {
    json r{{"image", e.image}, {"psnr", e.psnr}, {"ssim", e.ssim}, {"gamma", e.gamma}};
    if (!e.error.empty()) r["error"] = e.error;
    j["embeds"].push_back(r);
  }
  j["rows"] = json::array();
  for (const auto& row : rows) {
    json r{{"image", row.image},
           {"attack", row.attack},
           {"ber", row.ber},
           {"psnr", row.psnr},
           {"ssim", row.ssim},
           {"confidence", row.confidence},
           {"low_confidence", row.low_confidence},
           {"sync",
            {{"resized", row.sync.resized},
             {"padded", row.sync.padded},
             {"received_dims", {row.sync.received_dims.width, row.sync.received_dims.height}},
             {"rotation_correction", row.sync.rotation_correction},
             {"pilot_correlation", row.sync.pilot_correlation},
             {"threshold", row.sync.threshold},
             {"sync_failure", row.sync.sync_failure}}}};
    if (!row.error.empty()) r["error"] = row.error;
    j["rows"].push_back(r);
  }
  json means = json::object();
  for (const auto& c : columns) {
    const auto m = mean_ber(c);
    means[c] = m ? json(*m) : json(nullptr);
  }
  j["mean_ber"] = means;
  j["mean_psnr"] = mean_psnr();
  j["mean_ssim"] = mean_ssim();
  j["violations"] = violations;
  return j.dump(2) + "\n";
}

std::string BenchReport::to_table() const {
  std::size_t name_width = 5;
  for (const auto& e : embeds) name_width = std::max(name_width, e.image.size());
  std::vector<std::size_t> widths;
  for (const auto& c : columns) widths.push_back(std::max<std::size_t>(c.size(), 6));

  std::ostringstream os;
  auto cell = [&](const std::string& s, std::size_t w) {
    os << "  " << std::string(w > s.size() ? w - s.size() : 0, ' ') << s;
  };
  auto name = [&](const std::string& s) { os << s << std::string(name_width - s.size(), ' '); };

  os << "BER %\n";
  name("image");
  cell("PSNR", 6);
  cell("SSIM", 6);
  for (std::size_t c = 0; c < columns.size(); ++c) cell(columns[c], widths[c]);
  os << '\n';
  for (const auto& e : embeds) {
    name(e.image);
    cell(e.error.empty() ? fmt("%.2f", e.psnr) : "err", 6);
    cell(e.error.empty() ? fmt("%.3f", e.ssim) : "err", 6);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const BenchRow& r) { return r.image == e.image && r.attack == columns[c]; });
      cell(it == rows.end() || !it->error.empty() ? "err" : fmt("%.2f", it->ber), widths[c]);
    }
    os << '\n';
  }
  name("mean");
  cell(fmt("%.2f", mean_psnr()), 6);
  cell(fmt("%.3f", mean_ssim()), 6);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto m = mean_ber(columns[c]);
    cell(m ? fmt("%.2f", *m) : "-", widths[c]);
  }
  os << '\n';
  for (const auto& v : violations) os << "VIOLATION: " << v << '\n';
  return os.str();
}

BenchConfig load_bench_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read bench config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParamError(std::string("bench config is not valid JSON: ") + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  BenchConfig cfg;
  try {
    cfg.images_dir = resolve(j.at("images").get<std::string>());
    cfg.texts_file = resolve(j.at("texts").get<std::string>());
    if (j.contains("key")) cfg.key_file = resolve(j["key"].get<std::string>());
    if (j.contains("preset")) {
      cfg.preset = parse_preset(j["preset"].get<std::string>());
      if (!cfg.preset) throw ParamError("unknown preset " + j["preset"].get<std::string>());
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("attacks")) {
      for (const auto& a : j["attacks"]) cfg.options.attacks.push_back(AttackSpec::parse(a.get<std::string>()));
    } else {
      cfg.options.attacks = default_attack_grid();
    }
    cfg.options.include_clean = j.value("clean", true);
    if (j.contains("external")) cfg.options.external_dir = resolve(j["external"].get<std::string>());
    if (j.contains("write_marked")) cfg.options.write_marked_dir = resolve(j["write_marked"].get<std::string>());
    if (j.contains("thresholds"))
      for (const auto& [k, v] : j["thresholds"].items()) cfg.options.thresholds[k] = v.get<double>();
    if (j.contains("report_json")) cfg.report_json = resolve(j["report_json"].get<std::string>());
    if (j.contains("report_table")) cfg.report_table = resolve(j["report_table"].get<std::string>());
  } catch (const json::exception& e) {
    throw ParamError(std::string("malformed bench config: ") + e.what());
  }
  return cfg;
}

std::vector<BenchImage> load_bench_images(const BenchConfig& config) {
  if (!fs::is_directory(config.images_dir)) throw IoError("not a directory: " + config.images_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.images_dir)) {
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && (ext == ".png" || ext == ".jpg" || ext == ".jpeg")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::ifstream in(config.texts_file);
  if (!in) throw IoError("cannot read texts file " + config.texts_file.string());
  std::vector<std::string> texts;
  for (std::string line; std::getline(in, line);) texts.push_back(line);
  if (files.empty()) throw ParamError("no images in " + config.images_dir.string());
  if (texts.size() < files.size())
    throw ParamError(std::to_string(files.size()) + " images but only " + std::to_string(texts.size()) + " texts");
  std::vector<BenchImage> images;
  for (std::size_t i = 0; i < files.size(); ++i)
    images.push_back({files[i].stem().string(), load_image(files[i]), texts[i]});
  return images;
}

}  // namespace textmark
