// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "textmark/bench.hpp"
#include "textmark/dft.hpp"
#include "textmark/errors.hpp"
#include "textmark/keyed_rng.hpp"
#include "textmark/metrics.hpp"
#include "textmark/perceptual.hpp"
#include "textmark/pipeline.hpp"
#include "textmark/spreading.hpp"
#include "textmark/synthetic.hpp"
#include "textmark/text_codec.hpp"
#include "textmark/turbo.hpp"

using namespace textmark;

namespace {

int failures = 0;

void verdict(const std::string& id, bool pass, const std::string& detail) {
  std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

BitVector random_bits(std::size_t n, KeyedStream& rng) {
  BitVector b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.next() >> 63);
  return b;
}

double column(const BenchReport& r, const std::string& label) {
  const auto m = r.mean_ber(label);
  return m ? *m : 100.0;
}

bool all_rows_ok(const BenchReport& r, const std::string& label) {
  return std::all_of(r.rows.begin(), r.rows.end(),
                     [&](const BenchRow& row) { return row.attack != label || row.error.empty(); });
}

void ber_bound(const std::string& id, const BenchReport& r, const std::string& label, double limit) {
  const double m = column(r, label);
  verdict(id, m <= limit && all_rows_ok(r, label),
          label + fmt(": mean BER %.3f%% (limit %.1f%%)", m, limit));
}

}  // namespace

int main() {
  // Corpus: 20 synthetic 1024x1024 scenes with 200-character captions.
  std::vector<BenchImage> corpus;
  for (int i = 0; i < 20; ++i)
    corpus.push_back({"img" + std::to_string(i), synthetic_scene({1024, 1024}, 1000 + i),
                      synthetic_caption(1000 + i, 200)});
  WatermarkKey key;
  key.seed = 0x5EED0001;
  key.config = preset_config(Preset::P1000S128);

  BenchOptions options;
  options.attacks = default_attack_grid();
  const BenchReport report = run_bench(corpus, key, options);
  std::printf("%s", report.to_table().c_str());

  // 1. Clean round trip.
  {
    bool exact = all_rows_ok(report, "clean");
    double worst = 0.0;
    for (const auto& row : report.rows)
      if (row.attack == "clean") worst = std::max(worst, row.ber), exact = exact && row.ber == 0.0;
    verdict("1 clean", exact, fmt("max BER %.3f%% over 20 images (exact 0 required)", worst));
  }

  // 2. Imperceptibility.
  {
    double min_ssim = 1.0;
    bool embedded = true;
    for (const auto& e : report.embeds) {
      min_ssim = std::min(min_ssim, e.ssim);
      embedded = embedded && e.error.empty();
    }
    const double p = report.mean_psnr(), s = report.mean_ssim();
    verdict("2a psnr", embedded && p >= 32.3 && p <= 36.3, fmt("mean PSNR %.2f dB (band [32.3, 36.3])", p));
    verdict("2b ssim", embedded && s >= 0.90, fmt("mean SSIM %.4f (>= 0.90)", s));
    verdict("2c ssim-min", embedded && min_ssim >= 0.85, fmt("min SSIM %.4f (>= 0.85)", min_ssim));
  }

  // 3-8. Attack grid.
  ber_bound("3a jpeg", report, "jpeg:70", 0.5);
  ber_bound("3b jpeg", report, "jpeg:30", 2.0);
  verdict("3c jpeg", true, fmt("jpeg:5: mean BER %.2f%% (failure regime, no bound)", column(report, "jpeg:5")));
  ber_bound("4a noise", report, "noise:5", 0.5);
  ber_bound("4b noise", report, "noise:20", 0.5);
  ber_bound("5a resize", report, "resize:0.7", 1.0);
  ber_bound("5b resize", report, "resize:1.7", 5.0);
  ber_bound("6a crop", report, "crop:10", 1.0);
  ber_bound("6b crop", report, "crop:20", 3.0);
  ber_bound("6c crop", report, "crop:30", 10.0);
  ber_bound("7a rotate", report, "rotate:5", 2.0);
  ber_bound("7b rotate", report, "rotate:10", 3.0);
  ber_bound("8a splice", report, "splice:10", 1.0);
  ber_bound("8b splice", report, "splice:15", 1.0);
  ber_bound("8c splice", report, "splice:25", 1.0);

  // 9. Large-image preset.
  {
    std::vector<BenchImage> large;
    for (int i = 0; i < 5; ++i)
      large.push_back({"large" + std::to_string(i), synthetic_scene({2512, 1668}, 2000 + i),
                       synthetic_caption(2000 + i, 600)});
    WatermarkKey big;
    big.seed = 0x5EED0002;
    big.config = preset_config(Preset::P3000S64);
    BenchOptions opt;
    opt.attacks = {AttackSpec::parse("jpeg:30"), AttackSpec::parse("noise:20")};
    const BenchReport r = run_bench(large, big, opt);
    std::printf("%s", r.to_table().c_str());
    double worst = 0.0;
    bool exact = all_rows_ok(r, "clean");
    for (const auto& row : r.rows)
      if (row.attack == "clean") worst = std::max(worst, row.ber), exact = exact && row.ber == 0.0;
    verdict("9a large-clean", exact, fmt("max BER %.3f%% over 5 images at 2512x1668, l=3000, s=64", worst));
    ber_bound("9b large-jpeg", r, "jpeg:30", 1.0);
    ber_bound("9c large-noise", r, "noise:20", 1.0);
    double min_psnr = 99.0;
    for (const auto& e : r.embeds) min_psnr = std::min(min_psnr, e.error.empty() ? e.psnr : 0.0);
    verdict("9d large-psnr", min_psnr >= 29.5, fmt("min PSNR %.2f dB (>= 29.5)", min_psnr));
  }

  // 10. Component oracles.
  {
    const auto h = hadamard(128);
    bool orthogonal = true;
    for (std::size_t a = 0; a < 128; ++a)
      for (std::size_t b = a + 1; b < 128; ++b) {
        int dot = 0;
        for (std::size_t k = 0; k < 128; ++k) dot += h[a][k] * h[b][k];
        orthogonal = orthogonal && dot == 0;
      }
    verdict("10a hadamard", orthogonal, "8128 row pairs of order 128 orthogonal");
  }
  {
    KeyedStream rng(10, 10);
    TurboConfig cfg;
    cfg.info_length = 1000;
    cfg.coded_length = 1500;
    int wrong = 0;
    for (int t = 0; t < 1000; ++t) {
      const BitVector m = random_bits(1000, rng);
      const BitVector c = turbo_encode(m, cfg, t);
      std::vector<double> l(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) l[i] = c[i] ? -kLlrClamp : kLlrClamp;
      wrong += turbo_decode(l, cfg, t) != m;
    }
    verdict("10b turbo-noiseless", wrong == 0, fmt("%.0f of 1000 random messages decoded wrongly", wrong));
  }
  {
    std::ifstream in(std::string(TEXTMARK_ORACLE_DIR) + "/turbo_bsc_oracle.json");
    const double threshold = in ? nlohmann::json::parse(in).at("threshold_pct").get<double>() : 0.0;
    TurboConfig cfg;
    cfg.info_length = 1000;
    cfg.coded_length = 2000;
    KeyedStream rng(11, Stream::Noise);
    const double p = 0.10, mag = std::log((1 - p) / p);
    double total = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      const BitVector m = random_bits(1000, rng);
      const BitVector c = turbo_encode(m, cfg, 500 + t);
      std::vector<double> l(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) l[i] = (c[i] ^ (rng.uniform() < p)) ? -mag : mag;
      total += ber(m, turbo_decode(l, cfg, 500 + t));
    }
    verdict("10c turbo-bsc", threshold > 0.0 && total / trials < threshold,
            fmt("BSC(0.10) rate 1/2 mean BER %.3f%% (oracle threshold %.3f%%)", total / trials, threshold));
  }
  {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      KeyedStream rng(s, 12);
      Plane p(257 + 64 * s, 190 + 31 * s);
      for (auto& v : p.data()) v = 255.0 * rng.uniform();
      const Plane back = inverse_dft(forward_dft(p));
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i)
        num += std::pow(back.data()[i] - p.data()[i], 2), den += p.data()[i] * p.data()[i];
      worst = std::max(worst, std::sqrt(num / den));
    }
    verdict("10d dft", worst < 1e-6, fmt("worst relative round-trip error %.2e (< 1e-6)", worst));
  }
  {
    KeyedStream rng(13, 13);
    Plane y(64, 64), yw(64, 64);
    for (auto& v : y.data()) v = 255.0 * rng.uniform();
    for (auto& v : yw.data()) v = 255.0 * rng.uniform();
    const bool ok = blend(y, yw, Plane(64, 64, 0.0)).data() == y.data() &&
                    blend(y, yw, Plane(64, 64, 1.0)).data() == yw.data();
    verdict("10e blend", ok, "M = 0 returns Y and M = 1 returns Yw' exactly");
  }
  {
    double sum = 0.0, lo = 100.0, hi = 0.0;
    int trials = 0;
    for (int i = 0; i < 4; ++i) {
      const EmbedResult marked = embed(corpus[i].image, corpus[i].text, key);
      BitVector sent = marked.message;
      for (int t = 0; t < 25; ++t, ++trials) {
        WatermarkKey wrong = marked.key;
        wrong.seed = mix64(0xBAD000 + 100 * i + t);
        const double b = ber(sent, extract(marked.image, wrong).bits);
        sum += b;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
    }
    const double mean = sum / trials;
    verdict("10f wrong-key", mean >= 45.0 && mean <= 55.0,
            fmt("mean BER %.2f%% over 100 wrong keys (band [45, 55])", mean) + fmt(", range [%.1f, %.1f]", lo, hi));
  }
  {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      KeyedStream rng(s, 14);
      Plane p(256 + 17 * s, 256 - 9 * s);
      for (auto& v : p.data()) v = 255.0 * rng.uniform();
      Spectrum spec = forward_dft(p);
      const auto sel = select_annulus(p.width(), p.height(), 0.05, 0.5, s);
      std::vector<double> d(sel.size());
      for (auto& x : d) x = 500.0 * rng.normal();
      apply_magnitude_deltas(spec, sel, d);
      const double residue = inverse_dft_checked(spec).max_imaginary;
      worst = std::max(worst, residue);
    }
    verdict("10g hermitian", worst < 1e-9, fmt("max imaginary residue %.2e (< 1e-9)", worst));
  }

  // 11. Text-layer error localization.
  {
    KeyedStream rng(15, 15);
    bool scattered_ok = true, burst_ok = true, localized = true;
    for (double b : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      for (int t = 0; t < 50; ++t) {
        const std::string text = Charset32::canonical().fold(synthetic_caption(3000 + t, 200));
        const BitVector sent = encode_text(text);
        const std::size_t l = sent.size();
        const auto flips = static_cast<std::size_t>(std::ceil(l * b / 100.0));
        // Scattered flips anywhere in the payload.
        BitVector scattered = sent;
        const auto where = keyed_sample(rng.next(), Stream::Noise, l, flips);
        std::vector<bool> touched(text.size(), false);
        for (auto i : where) scattered[i] ^= 1u, touched[i / 5] = true;
        const std::string out = decode_bits(scattered);
        std::size_t changed = 0;
        for (std::size_t c = 0; c < text.size(); ++c) {
          changed += out[c] != text[c];
          localized = localized && ((out[c] != text[c]) == touched[c]);
        }
        scattered_ok = scattered_ok && changed <= flips;
        // The same number of flips packed into whole symbols.
        BitVector burst = sent;
        const std::size_t start = 5 * rng.below(text.size() - flips / 5);
        for (std::size_t i = 0; i < flips; ++i) burst[start + i] ^= 1u;
        const std::string bout = decode_bits(burst);
        std::size_t bchanged = 0;
        for (std::size_t c = 0; c < text.size(); ++c) bchanged += bout[c] != text[c];
        burst_ok = burst_ok && bchanged <= (flips + 4) / 5 + 1;
      }
    }
    verdict("11a text-localization", localized, "a character changes iff one of its 5 bits flipped");
    verdict("11b text-burst", burst_ok, "symbol-aligned errors flip <= ceil(l*b/100)/5 + 1 characters");
    verdict("11c text-scattered", scattered_ok, "scattered errors flip <= ceil(l*b/100) characters");
  }

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
