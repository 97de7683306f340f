#include "textmark/key.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "textmark/errors.hpp"
#include "textmark/spreading.hpp"

namespace textmark {

using nlohmann::json;

TurboConfig EmbedConfig::turbo_config() const {
  TurboConfig cfg;
  cfg.feedback_poly = turbo.feedback_poly;
  cfg.feedforward_poly = turbo.feedforward_poly;
  cfg.constraint_length = turbo.constraint_length;
  cfg.iterations = turbo.iterations;
  cfg.max_rate = turbo.max_rate;
  cfg.info_length = message_bits();
  cfg.coded_length = coded_length();
  return cfg;
}

void validate(const EmbedConfig& c) {
  if (c.payload_bits == 0 || c.payload_bits % 5 != 0)
    throw ParamError("payload l must be a positive multiple of 5");
  if (!is_power_of_two(c.spreading)) throw OrderError("spreading factor must be a power of two");
  if (c.n_chips == 0 || c.n_chips % c.spreading != 0)
    throw ParamError("n_chips must be a positive multiple of the spreading factor");
  if (!(c.r_low > 0.0 && c.r_low < c.r_high && c.r_high <= 0.5))
    throw ParamError("annulus radii must satisfy 0 < r_low < r_high <= 0.5");
  if (!(c.target_psnr > 0.0)) throw ParamError("target PSNR must be positive");
  if (c.gamma && !(*c.gamma > 0.0)) throw ParamError("gamma must be positive");
  if (!(c.dmax_ratio * std::sqrt(static_cast<double>(c.spreading)) >= 1.0))
    throw ParamError("D_max must be at least gamma");
  if (c.mask.window < 3 || c.mask.window % 2 == 0) throw ParamError("mask window must be odd and >= 3");
  if (!(c.mask.m_lo >= 0.0 && c.mask.m_lo < c.mask.m_hi && c.mask.m_hi <= 1.0))
    throw ParamError("mask bounds must satisfy 0 <= m_lo < m_hi <= 1");
  if (!(c.mask.variance_saturation > 0.0)) throw ParamError("variance saturation must be positive");
  if (!(c.csf.w_min > 0.0 && c.csf.w_min <= c.csf.w_max && c.csf.pixels_per_degree > 0.0))
    throw ParamError("invalid CSF parameters");
  validate(c.turbo_config());
}

std::optional<Preset> parse_preset(const std::string& name) {
  if (name == "p1000s128") return Preset::P1000S128;
  if (name == "p1500s128") return Preset::P1500S128;
  if (name == "p3000s64") return Preset::P3000S64;
  return std::nullopt;
}

const char* to_string(Preset preset) {
  switch (preset) {
    case Preset::P1000S128: return "p1000s128";
    case Preset::P1500S128: return "p1500s128";
    case Preset::P3000S64: return "p3000s64";
  }
  return "?";
}

EmbedConfig preset_config(Preset preset) {
  EmbedConfig c;
  switch (preset) {
    case Preset::P1000S128:
      break;
    case Preset::P1500S128:
      c.payload_bits = 1500;
      c.n_chips = 384000;
      break;
    case Preset::P3000S64:
      c.payload_bits = 3000;
      c.spreading = 64;
      c.n_chips = 384000;
      break;
  }
  return c;
}

double WatermarkKey::target() const {
  const double g = gamma.value_or(config.gamma.value_or(1.0));
  return g * std::sqrt(static_cast<double>(config.spreading));
}

namespace {

std::string octal(unsigned v) {
  std::ostringstream os;
  os << std::oct << v;
  return os.str();
}

unsigned parse_octal(const json& j) {
  if (j.is_number_unsigned()) return j.get<unsigned>();
  return static_cast<unsigned>(std::stoul(j.get<std::string>(), nullptr, 8));
}

template <class T>
T field(const json& j, const char* name, T fallback) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace

std::string key_to_json(const WatermarkKey& key) {
  const EmbedConfig& c = key.config;
  char seed[19];
  std::snprintf(seed, sizeof seed, "%016llx", static_cast<unsigned long long>(key.seed));
  json j;
  j["format_version"] = kKeyFormatVersion;
  j["seed"] = seed;
  j["dims"] = key.original_dims ? json{{"width", key.original_dims->width}, {"height", key.original_dims->height}}
                                : json(nullptr);
  j["l"] = c.payload_bits;
  j["s"] = c.spreading;
  j["n_chips"] = c.n_chips;
  j["pilot_blocks"] = c.pilot_blocks;
  j["radii"] = {c.r_low, c.r_high};
  j["target_psnr"] = c.target_psnr;
  j["gamma_override"] = c.gamma ? json(*c.gamma) : json(nullptr);
  j["gamma"] = key.gamma ? json(*key.gamma) : json(nullptr);
  j["dmax_ratio"] = c.dmax_ratio;
  j["dmax"] = key.dmax ? json(*key.dmax) : json(nullptr);
  j["mask"] = {{"window", c.mask.window},
               {"m_lo", c.mask.m_lo},
               {"m_hi", c.mask.m_hi},
               {"variance_saturation", c.mask.variance_saturation}};
  j["csf"] = {{"pixels_per_degree", c.csf.pixels_per_degree}, {"w_min", c.csf.w_min}, {"w_max", c.csf.w_max}};
  j["turbo"] = {{"feedback_poly", octal(c.turbo.feedback_poly)},
                {"feedforward_poly", octal(c.turbo.feedforward_poly)},
                {"constraint_length", c.turbo.constraint_length},
                {"iterations", c.turbo.iterations},
                {"max_rate", c.turbo.max_rate}};
  j["flags"] = {{"crc", c.crc}, {"informed", c.informed}, {"sync", c.sync}};
  return j.dump(2) + "\n";
}

WatermarkKey key_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParamError(std::string("key file is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kKeyFormatVersion)
      throw ParamError("unsupported key format version " + std::to_string(version));
    WatermarkKey key;
    key.seed = std::stoull(j.at("seed").get<std::string>(), nullptr, 16);
    if (auto it = j.find("dims"); it != j.end() && !it->is_null())
      key.original_dims = Dims{it->at("width").get<int>(), it->at("height").get<int>()};
    EmbedConfig& c = key.config;
    c.payload_bits = j.at("l").get<std::size_t>();
    c.spreading = j.at("s").get<std::size_t>();
    c.n_chips = j.at("n_chips").get<std::size_t>();
    c.pilot_blocks = field<std::size_t>(j, "pilot_blocks", c.pilot_blocks);
    const auto& radii = j.at("radii");
    c.r_low = radii.at(0).get<double>();
    c.r_high = radii.at(1).get<double>();
    c.target_psnr = field<double>(j, "target_psnr", c.target_psnr);
    if (auto it = j.find("gamma_override"); it != j.end() && !it->is_null()) c.gamma = it->get<double>();
    if (auto it = j.find("gamma"); it != j.end() && !it->is_null()) key.gamma = it->get<double>();
    c.dmax_ratio = field<double>(j, "dmax_ratio", c.dmax_ratio);
    if (auto it = j.find("dmax"); it != j.end() && !it->is_null()) key.dmax = it->get<double>();
    if (auto it = j.find("mask"); it != j.end()) {
      c.mask.window = field<int>(*it, "window", c.mask.window);
      c.mask.m_lo = field<double>(*it, "m_lo", c.mask.m_lo);
      c.mask.m_hi = field<double>(*it, "m_hi", c.mask.m_hi);
      c.mask.variance_saturation = field<double>(*it, "variance_saturation", c.mask.variance_saturation);
    }
    if (auto it = j.find("csf"); it != j.end()) {
      c.csf.pixels_per_degree = field<double>(*it, "pixels_per_degree", c.csf.pixels_per_degree);
      c.csf.w_min = field<double>(*it, "w_min", c.csf.w_min);
      c.csf.w_max = field<double>(*it, "w_max", c.csf.w_max);
    }
    if (auto it = j.find("turbo"); it != j.end()) {
      if (it->contains("feedback_poly")) c.turbo.feedback_poly = parse_octal(it->at("feedback_poly"));
      if (it->contains("feedforward_poly")) c.turbo.feedforward_poly = parse_octal(it->at("feedforward_poly"));
      c.turbo.constraint_length = field<int>(*it, "constraint_length", c.turbo.constraint_length);
      c.turbo.iterations = field<int>(*it, "iterations", c.turbo.iterations);
      c.turbo.max_rate = field<double>(*it, "max_rate", c.turbo.max_rate);
    }
    if (auto it = j.find("flags"); it != j.end()) {
      c.crc = field<bool>(*it, "crc", c.crc);
      c.informed = field<bool>(*it, "informed", c.informed);
      c.sync = field<bool>(*it, "sync", c.sync);
    }
    validate(c);
    return key;
  } catch (const json::exception& e) {
    throw ParamError(std::string("malformed key file: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParamError("malformed key seed");
  } catch (const std::out_of_range&) {
    throw ParamError("key value out of range");
  }
}

void save_key(const WatermarkKey& key, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write key file " + path.string());
  out << key_to_json(key);
  if (!out) throw IoError("failed writing key file " + path.string());
}

WatermarkKey load_key(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read key file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return key_from_json(ss.str());
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace textmark
