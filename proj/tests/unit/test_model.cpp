#include <gtest/gtest.h>

#include "support.hpp"

using namespace lpdc;

namespace {

CrystalConfig raw(double length, std::vector<LossSegment> segs) {
  CrystalConfig c;
  c.length = length;
  c.dispersion = DispersionModel::group_velocity_mismatch(kDefaultGroupIndexMismatch);
  c.loss.segments = std::move(segs);
  return c;
}

std::string config_error(const CrystalConfig& c) {
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Validate, AcceptsSingleLossySegment) {
  const auto c = validate_config(raw(0.008, {{0.0, 0.008, 87.00, 29.77}}));
  ASSERT_EQ(c.loss.segments.size(), 1u);
  EXPECT_EQ(c.loss.segments[0].alpha_s, 87.00);
  EXPECT_EQ(c.loss.segments[0].alpha_i, 29.77);
}

TEST(Validate, RejectsGap) {
  const auto msg = config_error(raw(0.02, {{0.0, 0.01, 0, 0}, {0.012, 0.02, 0, 0}}));
  EXPECT_NE(msg.find("gap"), std::string::npos) << msg;
}

TEST(Validate, RejectsOverlap) {
  const auto msg = config_error(raw(0.02, {{0.0, 0.012, 0, 0}, {0.01, 0.02, 0, 0}}));
  EXPECT_NE(msg.find("overlap"), std::string::npos) << msg;
}

TEST(Validate, RejectsNegativeAbsorption) {
  EXPECT_FALSE(config_error(raw(0.008, {{0.0, 0.008, -5.0, 0.0}})).empty());
  EXPECT_FALSE(config_error(raw(0.008, {{0.0, 0.008, 0.0, -1e-9}})).empty());
}

TEST(Validate, RejectsHighGain) {
  auto c = raw(0.02, {{0.0, 0.02, 0, 0}});
  c.kappa = 15.0;  // |kappa| L = 0.3
  EXPECT_NE(config_error(c).find("low-gain"), std::string::npos);
  c.kappa = cplx(0.0, 14.9);
  EXPECT_TRUE(config_error(c).empty());
}

TEST(Validate, RejectsBadTiling) {
  EXPECT_FALSE(config_error(raw(0.02, {{0.001, 0.02, 0, 0}})).empty());
  EXPECT_FALSE(config_error(raw(0.02, {{0.0, 0.019, 0, 0}})).empty());
  EXPECT_FALSE(config_error(raw(0.02, {})).empty());
  EXPECT_FALSE(config_error(raw(0.02, {{0.0, 0.0, 0, 0}, {0.0, 0.02, 0, 0}})).empty());
  EXPECT_FALSE(config_error(raw(-0.02, {{0.0, 0.02, 0, 0}})).empty());
}

TEST(Validate, RejectsTooManySegments) {
  std::vector<LossSegment> segs;
  const double L = 0.02;
  for (int j = 0; j < 65; ++j) segs.push_back({L * j / 65, L * (j + 1) / 65, 0, 0});
  segs.back().z_end = L;
  EXPECT_NE(config_error(raw(L, segs)).find("max 64"), std::string::npos);
  segs.pop_back();
  segs.back().z_end = L;
  EXPECT_TRUE(config_error(raw(L, segs)).empty());
}

TEST(Validate, SortsSegmentsAndIsIdempotent) {
  const auto once = validate_config(raw(0.02, {{0.01, 0.02, 0, 3}, {0.0, 0.01, 5, 0}}));
  EXPECT_EQ(once.loss.segments[0].z_start, 0.0);
  EXPECT_EQ(once.loss.segments[0].alpha_s, 5.0);
  const auto twice = validate_config(once);
  EXPECT_EQ(config_digest(once), config_digest(twice));
  ASSERT_EQ(once.loss.segments.size(), twice.loss.segments.size());
  for (std::size_t j = 0; j < once.loss.segments.size(); ++j) {
    EXPECT_EQ(once.loss.segments[j].z_start, twice.loss.segments[j].z_start);
    EXPECT_EQ(once.loss.segments[j].alpha_i, twice.loss.segments[j].alpha_i);
  }
}

TEST(LossProfile, TwoRegionCollapsesAtTheEnds) {
  EXPECT_EQ(LossProfile::two_region(0.02, 0.0, 1100, 60).segments.size(), 1u);
  EXPECT_EQ(LossProfile::two_region(0.02, 0.0, 1100, 60).segments[0].alpha_s, 0.0);
  EXPECT_EQ(LossProfile::two_region(0.02, 0.02, 1100, 60).segments[0].alpha_s, 1100.0);
  EXPECT_EQ(LossProfile::two_region(0.02, 0.018, 1100, 60).segments.size(), 2u);
}

TEST(LossProfile, SegmentLookupIsClosedOnTheLeft) {
  const auto p = LossProfile::two_region(0.02, 0.01, 1, 2, 3, 4);
  EXPECT_EQ(p.segment_index(0.0), 0u);
  EXPECT_EQ(p.segment_index(0.0099), 0u);
  EXPECT_EQ(p.segment_index(0.01), 1u);
  EXPECT_EQ(p.segment_index(0.02), 1u);
}

TEST(Dispersion, PolynomialHasNoConstantTerm) {
  const DispersionModel d{{2.0, -3.0, 0.5}};
  EXPECT_EQ(d.phase_mismatch(0.0), 0.0);
  EXPECT_DOUBLE_EQ(d.phase_mismatch(2.0), 2.0 * 2 - 3.0 * 4 + 0.5 * 8);
}

TEST(Dispersion, GroupVelocityMismatchSign) {
  const auto d = DispersionModel::group_velocity_mismatch(0.039);
  EXPECT_DOUBLE_EQ(d.walk_off_per_length(), -0.039 / kSpeedOfLight);
  const auto c = test::uniform(0.02, 0, 0);
  EXPECT_NEAR(c.walk_off_time(), 0.039 * 0.02 / kSpeedOfLight, 1e-27);
  EXPECT_GT(c.walk_off_centre(), 0.0);
}

TEST(Grid, RejectsOddOrTinySizes) {
  EXPECT_THROW(DetuningGrid(10, 1.0), ConfigError);
  EXPECT_THROW(DetuningGrid(17, 1.0), ConfigError);
  EXPECT_THROW(DetuningGrid(16, 0.0), ConfigError);
  EXPECT_NO_THROW(DetuningGrid(16, 1.0));
}

TEST(Grid, IsSymmetricExceptTheLowestSample) {
  for (std::size_t n : {16u, 64u, 4096u}) {
    const DetuningGrid g(n, 0.37);
    for (std::size_t k = 1; k < n; ++k) {
      EXPECT_EQ(g.omega(k) + g.omega(n - k), 0.0) << n << " " << k;
      EXPECT_EQ(g.mirror(g.mirror(k)), k);
    }
    EXPECT_EQ(g.mirror(0), 0u);
    EXPECT_EQ(g.omega(n / 2), 0.0);
    EXPECT_EQ(g.time(n / 2), 0.0);
  }
}

TEST(Grid, TimeAxisIsConjugate) {
  const DetuningGrid g(64, 2.0);
  EXPECT_DOUBLE_EQ(g.time_step() * g.span(), 2.0 * kPi);
  EXPECT_DOUBLE_EQ(g.time_window(), 64 * g.time_step());
}

TEST(BuildGrid, ResolvesTheLosslessBox) {
  const auto c = test::uniform(0.02, 0, 0);
  const double t0 = 0.039 * 0.02 / kSpeedOfLight;  // about 2.6 ps
  EXPECT_NEAR(t0, 2.6e-12, 0.01e-12);
  const auto g = build_grid(c, 16384);
  EXPECT_EQ(g.size(), 16384u);
  EXPECT_LE(g.time_step(), t0 / 100.0);
  EXPECT_GE(g.span(), 80.0 * kPi / t0);
  EXPECT_NEAR(g.time_window(), kDefaultWindowFactor * t0, 1e-9 * t0);
}

TEST(BuildGrid, SpanCoversFortyLobesForShortCrystal) {
  const auto c = test::uniform(0.008, 0, 0);
  const double t0 = 0.039 * 0.008 / kSpeedOfLight;
  const auto g = build_grid(c, 16384);
  EXPECT_GE(g.span(), 80.0 * kPi / t0);
  EXPECT_LE(g.time_step(), t0 / 100.0);
}

TEST(BuildGrid, DemandsMorePoints) {
  const auto c = test::uniform(0.02, 0, 0);
  EXPECT_THROW(build_grid(c, 10), ConfigError);
  try {
    build_grid(c, 1024);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("at least 3200"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(build_grid(c, 3200));
  EXPECT_NO_THROW(build_grid(c, 400, 4.0));
}

TEST(BuildGrid, NeedsWalkOff) {
  CrystalConfig c;
  c.length = 0.02;
  c.dispersion.coefficients = {0.0, 1e-30};
  c.loss = LossProfile::uniform(0.02, 0, 0);
  EXPECT_THROW(build_grid(validate_config(c), 4096), ConfigError);
}
