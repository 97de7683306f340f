#include "textmark/spreading.hpp"

#include <algorithm>
#include <utility>
#include <cmath>
#include <string>

#include "textmark/errors.hpp"
#include "textmark/keyed_rng.hpp"
#include "textmark/turbo.hpp"

namespace textmark {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::vector<int>> hadamard(std::size_t order) {
  if (!is_power_of_two(order))
    throw OrderError("Hadamard order " + std::to_string(order) + " is not a power of two");
  std::vector<std::vector<int>> h{{1}};
  for (std::size_t n = 1; n < order; n *= 2) {
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        next[r][c] = h[r][c];
        next[r][c + n] = h[r][c];
        next[r + n][c] = h[r][c];
        next[r + n][c + n] = -h[r][c];
      }
    }
    h = std::move(next);
  }
  return h;
}

double SpreadingPlan::chip(std::size_t block, std::size_t k) const {
  const double v = signs[block * spreading + k] * hadamard_entry(rows[block], static_cast<std::uint32_t>(k));
  return v / std::sqrt(static_cast<double>(spreading));
}

SpreadingPlan build_plan(std::uint64_t seed, std::size_t coded_length, std::size_t spreading,
                         std::size_t host_count, std::size_t pilot_blocks) {
  if (!is_power_of_two(spreading))
    throw OrderError("spreading factor " + std::to_string(spreading) + " is not a power of two");
  SpreadingPlan plan;
  plan.spreading = spreading;
  plan.coded_length = coded_length;
  plan.pilot_blocks = pilot_blocks;
  plan.host_count = host_count;
  if (plan.total_chips() > host_count)
    throw CapacityError("plan needs " + std::to_string(plan.total_chips()) + " host coefficients, " +
                        std::to_string(host_count) + " available");

  KeyedStream rows(seed, Stream::HadamardRows);
  plan.rows.resize(plan.block_count());
  for (auto& r : plan.rows) r = static_cast<std::uint32_t>(rows.below(spreading));

  KeyedStream signs(seed, Stream::SignMask);
  plan.signs.resize(plan.total_chips());
  for (auto& s : plan.signs) s = static_cast<std::int8_t>(signs.sign());

  plan.coefficients = keyed_sample(seed, Stream::Coefficients, host_count, plan.total_chips());

  KeyedStream pilots(seed, Stream::Pilots);
  plan.pilot_bits.resize(pilot_blocks);
  for (auto& b : plan.pilot_bits) b = static_cast<std::uint8_t>(pilots.next() >> 63);
  return plan;
}

double block_projection(std::span<const double> values, const SpreadingPlan& plan,
                        std::span<const double> weights, std::size_t block) {
  double p = 0.0;
  const std::size_t base = block * plan.spreading;
  for (std::size_t k = 0; k < plan.spreading; ++k) {
    const std::uint32_t c = plan.coefficients[base + k];
    p += plan.chip(block, k) * values[c] / weights[c];
  }
  return p;
}

std::vector<double> spread_embed_targets(const BitVector& coded, const SpreadingPlan& plan,
                                         std::span<const double> host,
                                         std::span<const double> weights,
                                         const EmbedTargets& targets) {
  if (coded.size() != plan.coded_length)
    throw LengthError("coded word has " + std::to_string(coded.size()) + " bits, plan expects " +
                      std::to_string(plan.coded_length));
  if (host.size() != weights.size() || host.size() < plan.total_chips())
    throw DimensionError("host and weights must cover every chip of the plan");

  const double s = static_cast<double>(plan.spreading);
  const double target = targets.strength * std::sqrt(s);
  std::vector<double> deltas(host.size(), 0.0);
  for (std::size_t j = 0; j < plan.block_count(); ++j) {
    const std::uint8_t bit = j < plan.coded_length ? coded[j] : plan.pilot_bits[j - plan.coded_length];
    const double b = bit ? -1.0 : 1.0;
    double step = b * target;
    if (targets.informed) {
      const double p = block_projection(host, plan, weights, j);
      step = std::clamp(b * target - p, -targets.max_step, targets.max_step);
    }
    const std::size_t base = j * plan.spreading;
    for (std::size_t k = 0; k < plan.spreading; ++k) {
      const std::uint32_t c = plan.coefficients[base + k];
      deltas[c] = step * plan.chip(j, k) * weights[c];
    }
  }
  return deltas;
}

double robust_scale(std::span<const double> values) {
  if (values.empty()) return 1e-6;
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  auto median = [](std::vector<double>& v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
    return m;
  };
  const double med = median(mags);
  for (auto& m : mags) m = std::abs(m - med);
  return std::max(1.4826 * median(mags), 1e-6);
}

Projection project(std::span<const double> received, const SpreadingPlan& plan,
                   std::span<const double> weights) {
  if (received.size() < plan.total_chips() || weights.size() < received.size())
    throw DimensionError("received values do not cover the plan");
  Projection proj;
  proj.values.resize(plan.coded_length);
  for (std::size_t j = 0; j < plan.coded_length; ++j)
    proj.values[j] = block_projection(received, plan, weights, j);
  proj.sigma = robust_scale(proj.values);
  return proj;
}

namespace {

SoftWord soft_from(Projection projection, double target) {
  SoftWord word;
  word.projection = std::move(projection);
  const double sigma2 = word.projection.sigma * word.projection.sigma;
  word.llrs.resize(word.projection.values.size());
  for (std::size_t j = 0; j < word.llrs.size(); ++j)
    word.llrs[j] = std::clamp(2.0 * target * word.projection.values[j] / sigma2, -kLlrClamp, kLlrClamp);
  return word;
}

}  // namespace

SoftWord despread(std::span<const double> received, const SpreadingPlan& plan,
                  std::span<const double> weights, double target) {
  return soft_from(project(received, plan, weights), target);
}

double received_target(const Projection& projection) {
  if (projection.values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : projection.values) sum += std::abs(v);
  return sum / static_cast<double>(projection.values.size());
}

SoftWord despread(std::span<const double> received, const SpreadingPlan& plan,
                  std::span<const double> weights) {
  Projection projection = project(received, plan, weights);
  const double target = received_target(projection);
  return soft_from(std::move(projection), target);
}

double pilot_correlation(std::span<const double> pilot_values, const SpreadingPlan& plan,
                         std::span<const double> pilot_weights) {
  const std::size_t n = plan.pilot_blocks * plan.spreading;
  if (n == 0) return 0.0;
  if (pilot_values.size() != n || pilot_weights.size() != n)
    throw DimensionError("pilot values must cover every pilot chip");
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += pilot_values[i] / pilot_weights[i];
  mean /= static_cast<double>(n);
  double num = 0.0;
  double xx = 0.0;
  double cc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t block = plan.coded_length + i / plan.spreading;
    const double b = plan.pilot_bits[block - plan.coded_length] ? -1.0 : 1.0;
    const double c = b * plan.chip(block, i % plan.spreading);
    const double x = pilot_values[i] / pilot_weights[i] - mean;
    num += c * x;
    xx += x * x;
    cc += c * c;
  }
  if (xx <= 0.0 || cc <= 0.0) return 0.0;
  return num / std::sqrt(xx * cc);
}

}  // namespace textmark
