#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "textmark/annulus.hpp"
#include "textmark/dft.hpp"
#include "textmark/errors.hpp"
#include "textmark/geometry.hpp"
#include "textmark/image.hpp"

namespace textmark {
namespace {

using testing::random_image;
using testing::random_plane;

TEST(Color, WhiteAndBlack) {
  RgbImage white(2, 2), black(2, 2);
  for (auto& v : white.data()) v = 255;
  const auto yw = rgb_to_ycbcr(white);
  const auto yb = rgb_to_ycbcr(black);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(yw.y.data()[i], 255.0, 1e-9);
    EXPECT_NEAR(yw.cb.data()[i], 128.0, 1e-3);
    EXPECT_NEAR(yw.cr.data()[i], 128.0, 1e-3);
    EXPECT_NEAR(yb.y.data()[i], 0.0, 1e-12);
    EXPECT_NEAR(yb.cb.data()[i], 128.0, 1e-12);
  }
}

TEST(Color, RoundTripWithinOneLevel) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RgbImage img = random_image(64, 48, s);
    const auto ycc = rgb_to_ycbcr(img);
    const RgbImage back = ycbcr_to_rgb(ycc.y, ycc.cb, ycc.cr);
    for (std::size_t i = 0; i < img.data().size(); ++i)
      ASSERT_LE(std::abs(int(img.data()[i]) - int(back.data()[i])), 1);
  }
}

TEST(Color, QuantizeRoundsAndClamps) {
  EXPECT_EQ(quantize_sample(-3.0), 0);
  EXPECT_EQ(quantize_sample(300.0), 255);
  EXPECT_EQ(quantize_sample(2.5), 3);
  EXPECT_EQ(quantize_sample(2.49), 2);
}

TEST(Dft, ConstantPlaneIsPureDc) {
  const Plane p(16, 12, 3.0);
  const auto s = forward_dft(p);
  EXPECT_NEAR(s.at(0, 0).real(), 3.0 * 16 * 12, 1e-9);
  for (int v = 0; v < 12; ++v)
    for (int u = 0; u < 16; ++u)
      if (u || v) EXPECT_NEAR(std::abs(s.at(u, v)), 0.0, 1e-9);
}

TEST(Dft, RoundTripAndParseval) {
  for (auto [w, h] : {std::pair{64, 64}, std::pair{33, 20}, std::pair{128, 96}}) {
    const Plane p = random_plane(w, h, static_cast<std::uint64_t>(w * h));
    const auto s = forward_dft(p);
    const Plane back = inverse_dft(s);
    double spatial = 0.0, spectral = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_NEAR(back.data()[i], p.data()[i], 1e-6);
      spatial += p.data()[i] * p.data()[i];
    }
    for (const auto& x : s.data()) spectral += std::norm(x);
    EXPECT_NEAR(spectral / (w * h), spatial, 1e-9 * spatial);
  }
}

TEST(Dft, NonHermitianSpectrumRejected) {
  Spectrum s(8, 8);
  s.at(1, 2) = {1.0, 0.0};
  EXPECT_GT(inverse_dft_checked(s).max_imaginary, 1e-9);
  EXPECT_THROW(inverse_dft(s), DimensionError);
}

// Independent count of the half-plane annulus straight from the definition.
std::size_t brute_count(int w, int h, double lo, double hi) {
  std::size_t n = 0;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (u == 0 || v == 0) continue;
      if (w % 2 == 0 && u == w / 2) continue;
      if (h % 2 == 0 && v == h / 2) continue;
      if (u > w / 2) continue;  // conjugate half
      const double fx = double(u) / w;
      const double fy = double(v <= h / 2 ? v : v - h) / h;
      const double r = std::sqrt(fx * fx + fy * fy);
      if (r >= lo && r < hi) ++n;
    }
  }
  return n;
}

TEST(Annulus, CountsMatchBruteForce) {
  EXPECT_EQ(annulus_positions(1024, 1024, 0.15, 0.45).size(), brute_count(1024, 1024, 0.15, 0.45));
  EXPECT_EQ(annulus_positions(1024, 1024, 0.08, 0.36).size(), brute_count(1024, 1024, 0.08, 0.36));
  EXPECT_EQ(annulus_positions(2512, 1668, 0.08, 0.36).size(), brute_count(2512, 1668, 0.08, 0.36));
  EXPECT_EQ(annulus_positions(99, 77, 0.1, 0.5).size(), brute_count(99, 77, 0.1, 0.5));
  // Frozen from a numpy count over the same grid.
  EXPECT_EQ(annulus_positions(1024, 1024, 0.15, 0.45).size(), 295850u);
  EXPECT_EQ(annulus_positions(1024, 1024, 0.08, 0.36).size(), 202374u);
}

TEST(Annulus, EmptyOnTinyImages) {
  EXPECT_THROW(select_annulus(8, 8, 0.49, 0.5, 1), EmptySelectionError);
}

TEST(Annulus, RejectsBadRadii) {
  EXPECT_THROW(select_annulus(64, 64, 0.0, 0.3, 1), ParamError);
  EXPECT_THROW(select_annulus(64, 64, 0.3, 0.2, 1), ParamError);
  EXPECT_THROW(select_annulus(64, 64, 0.1, 0.6, 1), ParamError);
}

TEST(Annulus, KeyedOrderDeterministicAndDistinct) {
  const auto a = select_annulus(256, 200, 0.08, 0.36, 5);
  const auto b = select_annulus(256, 200, 0.08, 0.36, 5);
  const auto c = select_annulus(256, 200, 0.08, 0.36, 6);
  ASSERT_EQ(a.size(), c.size());
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.positions[i].u, b.positions[i].u);
    EXPECT_EQ(a.positions[i].v, b.positions[i].v);
    same += a.positions[i].u == c.positions[i].u && a.positions[i].v == c.positions[i].v;
  }
  EXPECT_LT(same, static_cast<int>(a.size() / 100));
}

TEST(Annulus, NoConjugatePairsNoDcOrNyquist) {
  for (auto [w, h] : {std::pair{128, 128}, std::pair{101, 64}, std::pair{64, 77}}) {
    const auto sel = select_annulus(w, h, 0.05, 0.5, 3);
    std::set<std::pair<int, int>> seen;
    for (const auto& p : sel.positions) {
      EXPECT_NE(p.u, 0);
      EXPECT_NE(p.v, 0);
      if (w % 2 == 0) EXPECT_NE(p.u, w / 2);
      if (h % 2 == 0) EXPECT_NE(p.v, h / 2);
      const double r = radial_frequency(p, w, h);
      EXPECT_GE(r, 0.05);
      EXPECT_LT(r, 0.5);
      seen.insert({p.u, p.v});
    }
    EXPECT_EQ(seen.size(), sel.size());
    for (const auto& p : sel.positions) EXPECT_FALSE(seen.count({(w - p.u) % w, (h - p.v) % h}));
  }
}

TEST(ApplyDelta, ZeroDeltasAreBitExact) {
  const Plane p = random_plane(64, 64, 1);
  auto s = forward_dft(p);
  const auto before = s.data();
  const auto sel = select_annulus(64, 64, 0.08, 0.36, 1);
  apply_magnitude_deltas(s, sel, std::vector<double>(sel.size(), 0.0));
  EXPECT_EQ(s.data(), before);
}

TEST(ApplyDelta, NegativeBeyondMagnitudeClipsToZero) {
  auto s = forward_dft(random_plane(64, 64, 2));
  const auto sel = select_annulus(64, 64, 0.08, 0.36, 2);
  const auto mags = selected_magnitudes(s, sel);
  std::vector<double> d(mags.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -2.0 * mags[i];
  apply_magnitude_deltas(s, sel, d);
  for (double m : selected_magnitudes(s, sel)) EXPECT_EQ(m, 0.0);
}

TEST(ApplyDelta, StaysRealAndKeepsPhase) {
  const Plane p = random_plane(96, 80, 3);
  auto s = forward_dft(p);
  const auto original = s;
  const auto sel = select_annulus(96, 80, 0.08, 0.36, 3);
  KeyedStream rng(3, 3);
  std::vector<double> d(sel.size());
  for (auto& x : d) x = 50.0 * rng.normal();
  apply_magnitude_deltas(s, sel, d);
  EXPECT_LT(inverse_dft_checked(s).max_imaginary, 1e-9);
  const auto mags = selected_magnitudes(original, sel);
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const auto pos = sel.positions[i];
    const auto after = s.at(pos.u, pos.v);
    EXPECT_NEAR(std::abs(after), std::max(0.0, mags[i] + d[i]), 1e-9);
    if (std::abs(after) > 1e-9)
      EXPECT_NEAR(std::arg(after), std::arg(original.at(pos.u, pos.v)), 1e-9);
  }
}

TEST(ApplyDelta, DimensionErrors) {
  auto s = forward_dft(random_plane(32, 32, 4));
  const auto sel = select_annulus(64, 64, 0.08, 0.36, 4);
  EXPECT_THROW(apply_magnitude_deltas(s, sel, std::vector<double>(1, 1.0)), DimensionError);
}

TEST(Geometry, IdentityOperations) {
  const Plane p = random_plane(40, 30, 5);
  EXPECT_EQ(resize_plane(p, p.dims()).data(), p.data());
  EXPECT_EQ(rotate_plane(p, 0.0).data(), p.data());
  EXPECT_EQ(pad_centered(p, p.dims()).data(), p.data());
}

TEST(Geometry, PadCentersAndReplicates) {
  const Plane p = random_plane(10, 6, 6);
  const Plane q = pad_centered(p, {15, 9});
  ASSERT_EQ(q.dims(), (Dims{15, 9}));
  const int ox = centered_offset(15, 10), oy = centered_offset(9, 6);
  EXPECT_EQ(ox, 2);
  EXPECT_EQ(oy, 1);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) EXPECT_FLOAT_EQ(q.at(x + ox, y + oy), p.at(x, y));
  EXPECT_FLOAT_EQ(q.at(0, 0), p.at(0, 0));
  EXPECT_THROW(pad_centered(p, {5, 6}), DimensionError);
}

TEST(Geometry, ResizeAndRotateKeepConstants) {
  const Plane p(50, 40, 77.0);
  const Plane r = resize_plane(p, {73, 21});
  EXPECT_EQ(r.dims(), (Dims{73, 21}));
  for (double v : r.data()) EXPECT_NEAR(v, 77.0, 1e-3);
  for (double v : rotate_plane(p, 7.5).data()) EXPECT_NEAR(v, 77.0, 1e-3);
  EXPECT_THROW(resize_plane(p, {0, 3}), ParamError);
}

TEST(Geometry, RotationRoundTripIsClose) {
  Plane p(128, 128);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) p.at(x, y) = 100 + 50 * std::sin(x * 0.1) * std::cos(y * 0.07);
  const Plane back = rotate_plane(rotate_plane(p, 5.0), -5.0);
  double err = 0.0;
  int n = 0;
  for (int y = 32; y < 96; ++y)
    for (int x = 32; x < 96; ++x, ++n) err += std::abs(back.at(x, y) - p.at(x, y));
  EXPECT_LT(err / n, 0.5);
}

}  // namespace
}  // namespace textmark
