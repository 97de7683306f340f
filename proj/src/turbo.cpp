#include "textmark/turbo.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "textmark/errors.hpp"
#include "textmark/keyed_rng.hpp"

namespace textmark {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Tap coefficient i (power of D) of a polynomial given in octal with
// `length` binary digits, most significant digit = D^0.
int tap(unsigned poly, int length, int i) { return static_cast<int>((poly >> (length - 1 - i)) & 1u); }

struct Trellis {
  int memory = 0;
  int states = 0;
  std::vector<int> next;    // [state * 2 + input]
  std::vector<int> parity;  // [state * 2 + input]
  std::vector<int> flush;   // input that drives feedback to zero, per state

  explicit Trellis(const TurboConfig& cfg) : memory(cfg.memory()), states(1 << cfg.memory()) {
    const int k = cfg.constraint_length;
    next.resize(static_cast<std::size_t>(states) * 2);
    parity.resize(next.size());
    flush.resize(static_cast<std::size_t>(states));
    for (int s = 0; s < states; ++s) {
      int fb = 0;
      int ff = 0;
      for (int i = 1; i <= memory; ++i) {
        const int r = (s >> (i - 1)) & 1;
        fb ^= tap(cfg.feedback_poly, k, i) & r;
        ff ^= tap(cfg.feedforward_poly, k, i) & r;
      }
      flush[s] = fb;
      for (int u = 0; u < 2; ++u) {
        const int a = u ^ fb;
        next[s * 2 + u] = ((s << 1) | a) & (states - 1);
        parity[s * 2 + u] = (tap(cfg.feedforward_poly, k, 0) & a) ^ ff;
      }
    }
  }
};

struct RscOutput {
  BitVector systematic;
  BitVector parity;
};

RscOutput rsc_encode(const Trellis& trellis, const BitVector& input, bool terminate) {
  RscOutput out;
  out.systematic.reserve(input.size() + trellis.memory);
  out.parity.reserve(input.size() + trellis.memory);
  int state = 0;
  auto step = [&](int u) {
    out.systematic.push_back(static_cast<std::uint8_t>(u));
    out.parity.push_back(static_cast<std::uint8_t>(trellis.parity[state * 2 + u]));
    state = trellis.next[state * 2 + u];
  };
  for (std::uint8_t u : input) step(u & 1);
  if (terminate)
    for (int i = 0; i < trellis.memory; ++i) step(trellis.flush[state]);
  return out;
}

// Max-log-MAP over one constituent. Returns the extrinsic LLRs.
std::vector<double> max_log_map(const Trellis& trellis, std::span<const double> sys,
                                std::span<const double> apriori, std::span<const double> par,
                                bool terminated) {
  const std::size_t n = sys.size();
  const int ns = trellis.states;
  std::vector<double> alpha((n + 1) * ns, kNegInf);
  std::vector<double> beta((n + 1) * ns, kNegInf);
  alpha[0] = 0.0;

  auto gamma = [&](std::size_t t, int s, int u) {
    const double xu = u ? -1.0 : 1.0;
    const double xp = trellis.parity[s * 2 + u] ? -1.0 : 1.0;
    return 0.5 * (xu * (sys[t] + apriori[t]) + xp * par[t]);
  };

  for (std::size_t t = 0; t < n; ++t) {
    const double* a = &alpha[t * ns];
    double* a1 = &alpha[(t + 1) * ns];
    for (int s = 0; s < ns; ++s) {
      if (a[s] == kNegInf) continue;
      for (int u = 0; u < 2; ++u) {
        const int s1 = trellis.next[s * 2 + u];
        a1[s1] = std::max(a1[s1], a[s] + gamma(t, s, u));
      }
    }
    const double norm = *std::max_element(a1, a1 + ns);
    for (int s = 0; s < ns; ++s) a1[s] -= norm;
  }

  double* bn = &beta[n * ns];
  if (terminated)
    bn[0] = 0.0;
  else
    std::fill(bn, bn + ns, 0.0);
  for (std::size_t t = n; t-- > 0;) {
    double* b = &beta[t * ns];
    const double* b1 = &beta[(t + 1) * ns];
    for (int s = 0; s < ns; ++s) {
      for (int u = 0; u < 2; ++u) {
        const int s1 = trellis.next[s * 2 + u];
        if (b1[s1] == kNegInf) continue;
        b[s] = std::max(b[s], b1[s1] + gamma(t, s, u));
      }
    }
    const double norm = *std::max_element(b, b + ns);
    if (norm != kNegInf)
      for (int s = 0; s < ns; ++s) b[s] -= norm;
  }

  std::vector<double> extrinsic(n);
  for (std::size_t t = 0; t < n; ++t) {
    double best[2] = {kNegInf, kNegInf};
    const double* a = &alpha[t * ns];
    const double* b1 = &beta[(t + 1) * ns];
    for (int s = 0; s < ns; ++s) {
      if (a[s] == kNegInf) continue;
      for (int u = 0; u < 2; ++u) {
        const int s1 = trellis.next[s * 2 + u];
        if (b1[s1] == kNegInf) continue;
        best[u] = std::max(best[u], a[s] + gamma(t, s, u) + b1[s1]);
      }
    }
    extrinsic[t] = (best[0] - best[1]) - sys[t] - apriori[t];
  }
  return extrinsic;
}

}  // namespace

void validate(const TurboConfig& cfg) {
  if (cfg.constraint_length < 2 || cfg.constraint_length > 8)
    throw ParamError("constraint length must be in [2, 8]");
  if (cfg.iterations < 1) throw ParamError("turbo iterations must be >= 1");
  if (cfg.info_length == 0) throw RateError("turbo message length must be >= 1");
  if (cfg.coded_length == 0) throw RateError("coded length must be >= 1");
  if (cfg.effective_rate() > cfg.max_rate)
    throw RateError("effective code rate " + std::to_string(cfg.effective_rate()) +
                    " exceeds the cap " + std::to_string(cfg.max_rate) +
                    "; increase n_chips or reduce the payload");
  if (cfg.coded_length < cfg.info_length + static_cast<std::size_t>(cfg.memory()))
    throw RateError("coded length cannot carry the systematic bits and tail");
}

std::vector<std::uint32_t> make_interleaver(std::uint64_t seed, std::size_t n) {
  return keyed_permutation(seed, Stream::Interleaver, n);
}

std::vector<std::uint32_t> rate_matching_map(const TurboConfig& cfg) {
  validate(cfg);
  const std::size_t k = cfg.info_length;
  const std::size_t m = static_cast<std::size_t>(cfg.memory());
  const std::size_t mother = cfg.mother_length();
  std::vector<std::uint32_t> map;
  map.reserve(cfg.coded_length);
  if (cfg.coded_length >= mother) {
    for (std::size_t i = 0; i < cfg.coded_length; ++i) map.push_back(static_cast<std::uint32_t>(i % mother));
    return map;
  }
  for (std::size_t i = 0; i < k + m; ++i) map.push_back(static_cast<std::uint32_t>(i));
  // Each parity stream is decimated uniformly; the kept budget is split in
  // proportion to stream length so both constituents see parity.
  const std::size_t len1 = k + m;
  const std::size_t len2 = k;
  const std::size_t keep = cfg.coded_length - (k + m);
  std::size_t keep1 = (keep * len1 + (len1 + len2) / 2) / (len1 + len2);
  std::size_t keep2 = keep - keep1;
  if (keep2 > len2) {
    keep2 = len2;
    keep1 = keep - keep2;
  }
  for (std::size_t j = 0; j < std::max(keep1, keep2); ++j) {
    if (j < keep1) map.push_back(static_cast<std::uint32_t>(len1 + j * len1 / keep1));
    if (j < keep2) map.push_back(static_cast<std::uint32_t>(2 * len1 + j * len2 / keep2));
  }
  return map;
}

BitVector turbo_encode_mother(const BitVector& message, const TurboConfig& cfg, std::uint64_t seed) {
  if (message.size() != cfg.info_length)
    throw LengthError("message has " + std::to_string(message.size()) + " bits, expected " +
                      std::to_string(cfg.info_length));
  const Trellis trellis(cfg);
  const auto pi = make_interleaver(seed, message.size());
  BitVector permuted(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) permuted[i] = message[pi[i]];
  const RscOutput first = rsc_encode(trellis, message, true);
  const RscOutput second = rsc_encode(trellis, permuted, false);

  BitVector mother;
  mother.reserve(cfg.mother_length());
  mother.insert(mother.end(), first.systematic.begin(), first.systematic.end());
  mother.insert(mother.end(), first.parity.begin(), first.parity.end());
  mother.insert(mother.end(), second.parity.begin(), second.parity.end());
  return mother;
}

BitVector turbo_encode(const BitVector& message, const TurboConfig& cfg, std::uint64_t seed) {
  const auto map = rate_matching_map(cfg);
  const BitVector mother = turbo_encode_mother(message, cfg, seed);
  BitVector coded(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) coded[i] = mother[map[i]];
  return coded;
}

TurboDecodeResult turbo_decode_soft(std::span<const double> llrs, const TurboConfig& cfg,
                                    std::uint64_t seed) {
  if (llrs.size() != cfg.coded_length)
    throw LengthError("soft word has " + std::to_string(llrs.size()) + " values, expected " +
                      std::to_string(cfg.coded_length));
  const auto map = rate_matching_map(cfg);
  const Trellis trellis(cfg);
  const std::size_t k = cfg.info_length;
  const std::size_t m = static_cast<std::size_t>(cfg.memory());

  std::vector<double> mother(cfg.mother_length(), 0.0);
  for (std::size_t i = 0; i < map.size(); ++i) mother[map[i]] += std::clamp(llrs[i], -kLlrClamp, kLlrClamp);

  const std::span<const double> all(mother);
  const auto sys1 = all.subspan(0, k + m);
  const auto par1 = all.subspan(k + m, k + m);
  const auto par2 = all.subspan(2 * (k + m), k);

  const auto pi = make_interleaver(seed, k);
  std::vector<double> sys2(k);
  for (std::size_t i = 0; i < k; ++i) sys2[i] = sys1[pi[i]];

  std::vector<double> apriori1(k + m, 0.0);
  std::vector<double> apriori2(k, 0.0);
  std::vector<double> ext2(k, 0.0);
  for (int it = 0; it < cfg.iterations; ++it) {
    const auto ext1 = max_log_map(trellis, sys1, apriori1, par1, true);
    for (std::size_t i = 0; i < k; ++i) apriori2[i] = cfg.extrinsic_scale * ext1[pi[i]];
    ext2 = max_log_map(trellis, sys2, apriori2, par2, false);
    for (std::size_t i = 0; i < k; ++i) apriori1[pi[i]] = cfg.extrinsic_scale * ext2[i];
  }

  TurboDecodeResult result;
  result.posterior.resize(k);
  result.bits.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double l = sys2[i] + apriori2[i] + ext2[i];
    result.posterior[pi[i]] = l;
  }
  for (std::size_t i = 0; i < k; ++i) result.bits[i] = result.posterior[i] < 0.0 ? 1 : 0;
  return result;
}

BitVector turbo_decode(std::span<const double> llrs, const TurboConfig& cfg, std::uint64_t seed) {
  return turbo_decode_soft(llrs, cfg, seed).bits;
}

}  // namespace textmark
