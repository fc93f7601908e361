#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "distlink/core/error.h"
#include "distlink/masking/calibration.h"
#include "distlink/masking/perturb.h"
#include "distlink/masking/rng.h"

namespace distlink::masking {
namespace {

const Region kGermany = Region::germany();

// Published quantiles at 0.05 / 0.95 and the sample variance per sigma.
struct PrintedRow {
  double sigma;
  double q05;
  double q95;
  double variance;
};
const PrintedRow kPrinted[] = {
    {0.005, -1.1088, 1.2192, 0.4799},  {0.010, -2.3909, 2.2642, 1.9677},
    {0.015, -3.3063, 3.4624, 4.3312},  {0.020, -4.6132, 4.3512, 7.8732},
    {0.025, -5.6147, 5.3089, 11.5378}, {0.030, -6.4952, 6.6511, 16.1313},
    {0.035, -8.3848, 7.9411, 23.6334}, {0.040, -9.1530, 8.7236, 30.2768},
    {0.045, -11.0830, 10.2638, 39.6836}, {0.050, -11.4906, 11.4998, 48.8299},
};

TEST(Philox, KnownAnswers) {
  using B = Philox4x32::Block;
  EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
            (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 {0xffffffff, 0xffffffff}),
            (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                 {0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, DeterministicAndPathSeparated) {
  RandomStream a(7, {1, 2});
  RandomStream b(7, {1, 2});
  RandomStream c(7, {1, 3});
  RandomStream d(8, {1, 2});
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
  EXPECT_NE(derive_key(1, {2, 3}), derive_key(1, {3, 2}));
}

TEST(RandomStream, UniformAndBelowRanges) {
  RandomStream rng(1, {});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(RandomStream, NormalMoments) {
  RandomStream rng(2, {});
  const int n = 200000;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Perturb, ZeroSigmaIsIdentity) {
  const std::vector<core::GeoPoint> pts{{11.4, 43.7}, {-3.2, 40.5}, {180, 90}};
  EXPECT_EQ(perturb_coordinates(pts, NoiseSpec{0.0, 99}), pts);
}

TEST(Perturb, SeededRegressionValue) {
  const std::vector<core::GeoPoint> pts{{11.4275, 43.7374}, {-3.2485, 40.4983}};
  const auto out = perturb_coordinates(pts, NoiseSpec{0.01, 42});
  EXPECT_EQ(out, perturb_coordinates(pts, NoiseSpec{0.01, 42}));
  EXPECT_DOUBLE_EQ(out[0].lon, 11.431887632702342);
  EXPECT_DOUBLE_EQ(out[0].lat, 43.730036161114256);
  EXPECT_DOUBLE_EQ(out[1].lon, -3.2560995683301748);
  EXPECT_DOUBLE_EQ(out[1].lat, 40.512969289725461);
}

TEST(Perturb, MeanDisplacementVanishes) {
  const double sigma = 0.01;
  const int n = 10000;
  const std::vector<core::GeoPoint> pts(n, core::GeoPoint{10.0, 51.0});
  const auto out = perturb_coordinates(pts, NoiseSpec{sigma, 5});
  double dlon = 0.0;
  double dlat = 0.0;
  for (const auto& p : out) {
    dlon += p.lon - 10.0;
    dlat += p.lat - 51.0;
  }
  const double tol = 3 * sigma / std::sqrt(static_cast<double>(n));
  EXPECT_LT(std::abs(dlon / n), tol);
  EXPECT_LT(std::abs(dlat / n), tol);
}

TEST(Perturb, StaysOnTheSphere) {
  const std::vector<core::GeoPoint> pts{{179.99, 89.99}, {-179.99, -89.99}};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const auto& p : perturb_coordinates(pts, NoiseSpec{0.5, seed})) {
      EXPECT_TRUE(core::is_valid(p));
    }
  }
}

TEST(Perturb, NegativeSigmaRejected) {
  const std::vector<core::GeoPoint> pts{{0, 0}};
  EXPECT_THROW(perturb_coordinates(pts, NoiseSpec{-0.1, 1}), InputError);
  EXPECT_THROW(perturb_coordinates(pts, NoiseSpec{NAN, 1}), InputError);
}

TEST(Region, Validation) {
  EXPECT_NO_THROW(kGermany.validate());
  EXPECT_THROW((Region{50, 50, 5, 15}).validate(), InputError);
  EXPECT_THROW((Region{50, 95, 5, 15}).validate(), InputError);
  RandomStream rng(3, {});
  for (int i = 0; i < 1000; ++i) {
    const auto p = kGermany.sample(rng);
    EXPECT_GE(p.lat, kGermany.lat_min);
    EXPECT_LE(p.lat, kGermany.lat_max);
    EXPECT_GE(p.lon, kGermany.lon_min);
    EXPECT_LE(p.lon, kGermany.lon_max);
  }
}

TEST(Quantile, LinearInterpolationExample) {
  const std::vector<double> s{-2, -1, 0, 1, 2};
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.25), -1.5);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.75), 1.5);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.001), -2);
  EXPECT_DOUBLE_EQ(empirical_quantile(s, 0.999), 2);
}

TEST(BandFromTable, ArtificialSample) {
  CalibrationTable t;
  t.deviations = {-2, -1, 0, 1, 2};
  const BandSpec b = band_from_table(t, 0.5);
  EXPECT_DOUBLE_EQ(b.lo, -1.5);
  EXPECT_DOUBLE_EQ(b.hi, 1.5);
  const auto rel = b.relation();
  EXPECT_TRUE(rel(10, 11.4));
  EXPECT_FALSE(rel(10, 11.5));
}

TEST(BandFromTable, AlphaNearOneGivesSampleRange) {
  const CalibrationTable t = calibrate(kGermany, 0.01, 1000, 4);
  const BandSpec b = band_from_table(t, 0.9999);
  EXPECT_EQ(b.lo, t.deviations.front());
  EXPECT_EQ(b.hi, t.deviations.back());
}

TEST(BandFromTable, Errors) {
  const CalibrationTable t = calibrate(kGermany, 0.01, 100, 4);
  EXPECT_THROW(band_from_table(t, 0.0), InputError);
  EXPECT_THROW(band_from_table(t, 1.0), InputError);
  const CalibrationTable zero = calibrate(kGermany, 0.0, 100, 4);
  EXPECT_THROW(band_from_table(zero, 0.5), DegenerateError);
}

TEST(BandFromTable, NearPrintedBandAtSmallSigma) {
  const BandSpec b = band_from_table(calibrate(kGermany, 0.005, 1000, 1), 0.9);
  EXPECT_NEAR(b.lo, -1.1088, 0.5);
  EXPECT_NEAR(b.hi, 1.2192, 0.5);
}

TEST(Calibrate, ZeroSigmaGivesZeroDeviations) {
  const CalibrationTable t = calibrate(kGermany, 0.0, 500, 1);
  EXPECT_EQ(t.n_pairs(), 500u);
  for (double d : t.deviations) EXPECT_EQ(d, 0.0);
  EXPECT_THROW(utility_score(t), DegenerateError);
}

TEST(Calibrate, SortedAndDeterministic) {
  const CalibrationTable a = calibrate(kGermany, 0.02, 1000, 17);
  EXPECT_TRUE(std::is_sorted(a.deviations.begin(), a.deviations.end()));
  EXPECT_EQ(a.deviations, calibrate(kGermany, 0.02, 1000, 17).deviations);
  EXPECT_NE(a.deviations, calibrate(kGermany, 0.02, 1000, 18).deviations);
}

TEST(Calibrate, InvalidArguments) {
  EXPECT_THROW(calibrate(kGermany, 0.01, 1, 1), InputError);
  EXPECT_THROW(calibrate(kGermany, -0.01, 100, 1), InputError);
  EXPECT_THROW(calibrate(Region{50, 49, 5, 15}, 0.01, 100, 1), InputError);
}

TEST(Calibrate, NearPrintedRowAtSigmaOneHundredth) {
  // Statistical, so a majority of five seeds must agree.
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CalibrationTable t = calibrate(kGermany, 0.010, 1000, seed);
    const double q05 = empirical_quantile(t.deviations, 0.05);
    const double q95 = empirical_quantile(t.deviations, 0.95);
    const double var = sample_variance(t.deviations);
    if (std::abs(q05 + 2.3909) <= 0.5 && std::abs(q95 - 2.2642) <= 0.5 &&
        std::abs(var / 1.9677 - 1) <= 0.25) {
      ++ok;
    }
  }
  EXPECT_GE(ok, 3);
}

TEST(Calibrate, UtilityNearPrintedValues) {
  EXPECT_NEAR(utility_score(calibrate(kGermany, 0.005, 1000, 1)), 1 / 0.4799,
              0.25 / 0.4799);
  EXPECT_NEAR(utility_score(calibrate(kGermany, 0.05, 1000, 1)), 1 / 48.8299,
              0.25 / 48.8299);
}

TEST(Calibrate, BandCentredOnZero) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const auto& row : kPrinted) {
      const CalibrationTable t = calibrate(kGermany, row.sigma, 1000, seed);
      for (double alpha : {0.3, 0.5, 0.9}) {
        const BandSpec b = band_from_table(t, alpha);
        EXPECT_LT(b.lo, 0.0);
        EXPECT_GT(b.hi, 0.0);
      }
    }
  }
}

TEST(Calibrate, WidthAndVarianceGrowWithSigma) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    int inversions = 0;
    double prev_var = 0.0;
    double prev_width = 0.0;
    for (const auto& row : kPrinted) {
      const CalibrationTable t = calibrate(kGermany, row.sigma, 1000, seed);
      const double var = sample_variance(t.deviations);
      const BandSpec b = band_from_table(t, 0.9);
      if (var < prev_var) ++inversions;
      EXPECT_GT(b.hi - b.lo, prev_width);
      prev_var = var;
      prev_width = b.hi - b.lo;
    }
    EXPECT_LE(inversions, 1) << "seed " << seed;
  }
}

TEST(Calibrate, CoverageOnFreshSample) {
  for (double sigma : {0.005, 0.025, 0.05}) {
    const CalibrationTable t = calibrate(kGermany, sigma, 1000, 21);
    const CalibrationTable fresh = calibrate(kGermany, sigma, 1000, 22);
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const BandSpec b = band_from_table(t, alpha);
      const auto inside = std::count_if(fresh.deviations.begin(), fresh.deviations.end(),
                                        [&](double d) { return b.lo < d && d < b.hi; });
      EXPECT_NEAR(static_cast<double>(inside) / 1000.0, alpha, 0.05)
          << "sigma " << sigma << " alpha " << alpha;
    }
  }
}

TEST(Calibrate, VarianceAndUtility) {
  const std::vector<double> s{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(sample_variance(s), 5.0 / 3.0);
  CalibrationTable t;
  t.deviations = s;
  EXPECT_DOUBLE_EQ(utility_score(t), 0.6);
  EXPECT_THROW(sample_variance(std::vector<double>{1}), DegenerateError);
}

TEST(CalibrationJson, RoundTrip) {
  const CalibrationTable t = calibrate(kGermany, 0.015, 200, 9);
  const CalibrationTable back = calibration_from_json(calibration_to_json(t));
  EXPECT_EQ(back.sigma, t.sigma);
  EXPECT_EQ(back.seed, t.seed);
  EXPECT_EQ(back.region, t.region);
  EXPECT_EQ(back.deviations, t.deviations);
}

TEST(CalibrationJson, Validation) {
  EXPECT_THROW(calibration_from_json("{"), InputError);
  EXPECT_THROW(calibration_from_json(
                   R"({"sigma":0.1,"seed":1,"region":{"lat_min":47,"lat_max":55,)"
                   R"("lon_min":5,"lon_max":15},"n_pairs":2,"deviations":[2,1]})"),
               InputError);
  EXPECT_THROW(calibration_from_json(
                   R"({"sigma":0.1,"seed":1,"region":{"lat_min":47,"lat_max":55,)"
                   R"("lon_min":5,"lon_max":15},"n_pairs":3,"deviations":[1,2]})"),
               InputError);
}

}  // namespace
}  // namespace distlink::masking
