#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "stopdur/duration.hpp"
#include "stopdur/montecarlo.hpp"

using namespace stopdur;
using std::numbers::e;

namespace {

SingleThreshold skip(std::int64_t c) { return {c, c}; }

void expect_distribution(const DurationDistribution& d) {
  EXPECT_NEAR(d.total(), 1.0, 1e-10);
  for (double p : d.pmf)
    EXPECT_GE(p, 0.0);
  if (d.no_choice_mass) {
    EXPECT_GE(*d.no_choice_mass, 0.0);
    EXPECT_LE(*d.no_choice_mass, d.pmf.back() + 1e-15);
  }
}

}  // namespace

TEST(NoInfoPmf, Examples) {
  const auto d1 = no_info_pmf(5, skip(1));
  EXPECT_EQ(d1.pmf, (std::vector<double>{1, 0, 0, 0, 0}));
  EXPECT_EQ(no_info_pmf(9, skip(4)).median(), 6);
  EXPECT_EQ(no_info_pmf(1, skip(1)).pmf, std::vector<double>{1.0});
  // Skipping 5 of 10: pmf[10] = 5/9 (the last applicant is reached with
  // probability 5/9, not 1/2 + 1/10).
  const auto pd = no_info_pmf(10, single_threshold(SettingSpec::with_n(Variant::Postdoc, 10)));
  EXPECT_NEAR(pd.pmf.back(), 5.0 / 9.0, 1e-15);
  EXPECT_THROW(no_info_pmf(5, skip(6)), std::invalid_argument);
}

TEST(NoInfoPmf, EqualsEnumeration) {
  for (std::int64_t n = 1; n <= 8; ++n)
    for (std::int64_t c = 1; c <= n; ++c) {
      const auto s = SettingSpec::with_n(Variant::Secretary, n);
      const auto exact = enumerate_exact(s, skip(c)).distribution;
      const auto formula = no_info_pmf(n, skip(c));
      for (std::int64_t x = 0; x < n; ++x)
        EXPECT_NEAR(formula.pmf[x], exact.pmf[x], 1e-12) << "N=" << n << " c=" << c << " x=" << x + 1;
    }
}

TEST(NoInfoMean, ClosedFormMatchesPmf) {
  for (std::int64_t n : {5, 9, 25, 100})
    for (std::int64_t c = 1; c <= n; ++c) {
      const auto d = no_info_pmf(n, skip(c));
      expect_distribution(d);
      EXPECT_NEAR(no_info_mean(n, skip(c)), d.mean(), 1e-9) << n << ' ' << c;
    }
}

TEST(NoInfoMean, Examples) {
  // The exact means. The finite-pool table convention adds (c-1)/(N-1).
  EXPECT_NEAR(no_info_mean(100, skip(10)), 31.1357, 1e-4);
  EXPECT_NEAR(no_info_mean(100, skip(38)), 74.1043, 1e-4);
  EXPECT_NEAR(tabulated_threshold_mean(100, 10), 31.2266, 1e-4);
  EXPECT_NEAR(tabulated_threshold_mean(100, 38), 74.4780, 1e-4);
  EXPECT_NEAR(tabulated_threshold_mean(100, 38) - no_info_mean(100, skip(38)), 37.0 / 99.0, 1e-12);
  // N=6, c=3 against the rational enumeration.
  const auto s = SettingSpec::with_n(Variant::Secretary, 6);
  EXPECT_NEAR(no_info_mean(6, skip(3)), enumerate_exact(s, skip(3)).distribution.mean(), 1e-12);
}

TEST(NoInfoQuantile, Examples) {
  EXPECT_DOUBLE_EQ(no_info_quantile(4, 0.5), 6.0);
  EXPECT_DOUBLE_EQ(no_info_quantile(4, 0.75), 12.0);
  EXPECT_DOUBLE_EQ(no_info_quantile(5, 0.2), 5.0);
  EXPECT_EQ(no_info_quantile(4, 0.75, 9), 9);
  EXPECT_EQ(no_info_quantile(38, 0.5, 100), 74);
  EXPECT_THROW(no_info_quantile(4, 1.0), std::invalid_argument);
  EXPECT_THROW(no_info_quantile(4, 0.0), std::invalid_argument);
  // The integer quantile agrees with the exact PMF when it is below N.
  for (double p : {0.1, 0.25, 0.5, 0.6})
    EXPECT_EQ(no_info_quantile(38, p, 100), no_info_pmf(100, skip(38)).quantile(p)) << p;
}

TEST(AsymptoticFractionSingle, Examples) {
  EXPECT_NEAR(asymptotic_fraction_single(1.0 / e), 2.0 / e, 1e-15);
  EXPECT_EQ(asymptotic_fraction_single(1.0), 1.0);
  EXPECT_NEAR(asymptotic_fraction_single(1.0 / std::sqrt(e)), 1.5 / std::sqrt(e), 1e-15);
  EXPECT_THROW(asymptotic_fraction_single(0.0), std::invalid_argument);
}

TEST(InverseThresholdForMean, Examples) {
  EXPECT_NEAR(inverse_threshold_for_mean(0.5), 0.186682, 1e-6);
  EXPECT_NEAR(inverse_threshold_for_mean(2.0 / e), 1.0 / e, 1e-9);
  EXPECT_NEAR(inverse_threshold_for_mean(1.0 - 1e-9), 1.0, 1e-3);
  for (double p : {0.05, 0.3, 0.5, 0.7, 0.95})
    EXPECT_NEAR(asymptotic_fraction_single(inverse_threshold_for_mean(p)), p, 1e-10) << p;
  EXPECT_THROW(inverse_threshold_for_mean(1.0), std::invalid_argument);
}

TEST(BeardenApproximation, WithinOneOfClosedForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(std::log(4.0), std::log(1e6));
  for (int i = 0; i < 200; ++i) {
    const double n = std::round(std::exp(u(rng)));
    EXPECT_LT(std::abs(bearden_mean_real(n) - bearden_mean_approx(n)), 1.0) << n;
  }
  EXPECT_NEAR(bearden_mean_real(1e6), 7901.35, 0.01);
}

TEST(CutoffPmf, MoserExamples) {
  const auto d9 = cutoff_pmf(9, moser_cutoffs(9));
  expect_distribution(d9);
  EXPECT_NEAR(d9.mean(), 4.23844, 1e-5);
  // Smallest x with CDF >= 1/2: CDF(3) = 0.451, CDF(4) = 0.574.
  EXPECT_EQ(d9.median(), 4);
  const auto big = cutoff_pmf(1000000, moser_cutoffs(1000000));
  EXPECT_NEAR(big.mean(), 333338.45, 0.01);
  EXPECT_EQ(big.median(), 292898);
  EXPECT_NEAR(big.mean() / 1e6, 1.0 / 3.0, 1e-3);
  EXPECT_NEAR(static_cast<double>(big.median()) / 1e6, 1.0 - std::sqrt(0.5), 1e-3);
  EXPECT_NEAR(cutoff_mean(moser_cutoffs(9)), d9.mean(), 1e-12);
}

TEST(CutoffPmf, ImmediateAcceptanceAndErrors) {
  const auto d = cutoff_pmf(3, ValueCutoffs{{0.0, 0.7, 0.0}, false});
  EXPECT_EQ(d.pmf, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_THROW(cutoff_pmf(3, ValueCutoffs{{0.5, 0.0}, false}), std::invalid_argument);
  EXPECT_THROW(cutoff_pmf(2, ValueCutoffs{{0.5, 0.0}, true}), std::invalid_argument);
}

TEST(CutoffPmf, Telescoping) {
  const std::int64_t n = 1000;
  ValueCutoffs pol{std::vector<double>(n), false};
  for (std::int64_t i = 1; i <= n; ++i)
    pol.cutoffs[i - 1] = 1.0 - 2.0 / static_cast<double>(n + 2 - i);
  const auto d = cutoff_pmf(n, pol);
  for (std::int64_t x = 1; x <= n; ++x)
    ASSERT_NEAR(d.pmf[x - 1], 2.0 * (n + 1 - x) / (double(n) * (n + 1)), 1e-12) << x;
}

TEST(CutoffPmf, SlopeFollowsRecursion) {
  // Cutoffs fall along the sequence: P_x = (P_{x+1}^2 + 1)/2, so
  // Pr(T=x+1)/Pr(T=x) - 1 = (1 - P_{x+1}) P_x / (1 - P_x) - 1
  //                      = (2 P_x - 1 - P_{x+1}) / (1 + P_{x+1}).
  const std::int64_t n = 500;
  const auto pol = moser_cutoffs(n);
  const auto d = cutoff_pmf(n, pol);
  for (std::int64_t x = 1; x + 1 < n; ++x) {
    const double p = pol.cutoffs[x - 1], q = pol.cutoffs[x];
    const double ratio = d.pmf[x] / d.pmf[x - 1] - 1.0;
    ASSERT_NEAR(ratio, (1.0 - q) * p / (1.0 - p) - 1.0, 1e-10) << x;
    ASSERT_NEAR(ratio, (2.0 * p - 1.0 - q) / (1.0 + q), 1e-10) << x;
  }
}

TEST(CutoffPmf, DecayingPool) {
  const auto d = cutoff_pmf(1000000, decaying_cutoffs(1000000));
  expect_distribution(d);
  EXPECT_NEAR(d.mean(), 707.107, 0.01);
  EXPECT_EQ(cutoff_pmf(1, decaying_cutoffs(1)).pmf, std::vector<double>{1.0});
}

TEST(GmPmf, Examples) {
  const auto d = gm_pmf(100, gm_best_choice_cutoffs(100));
  expect_distribution(d);
  EXPECT_NEAR(d.mean(), 58.2935, 1e-4);
  // CDF(58) = 0.4964, CDF(59) = 0.5053.
  EXPECT_EQ(d.median(), 59);
  EXPECT_EQ(gm_pmf(1, gm_best_choice_cutoffs(1)).pmf, std::vector<double>{1.0});
  EXPECT_NEAR(gm_mean(100, gm_best_choice_cutoffs(100)), d.mean(), 1e-9);
  EXPECT_THROW(gm_pmf(30000, gm_cutoffs(30000, 0.8)), CapExceeded);
  EXPECT_NO_THROW(gm_pmf(25, gm_cutoffs(25, 0.8), 25));
  EXPECT_THROW(gm_pmf(26, gm_cutoffs(26, 0.8), 25), CapExceeded);
}

TEST(GmPmf, NoChoiceMassAndAsymptoticFraction) {
  const std::int64_t n = 2000;
  const auto d = gm_pmf(n, gm_best_choice_cutoffs(n));
  ASSERT_TRUE(d.no_choice_mass);
  // Pr(no choice) = sum_i P_i^N / N.
  const auto pol = gm_best_choice_cutoffs(n);
  double direct = 0.0;
  for (double p : pol.cutoffs)
    direct += std::pow(p, double(n)) / double(n);
  EXPECT_NEAR(*d.no_choice_mass, direct, 1e-12);
  EXPECT_NEAR(*d.no_choice_mass, 0.199505, 2e-3);
  EXPECT_NEAR(d.mean() / n, 0.580164, 2e-3);
}

TEST(ClosedMeans, MatchPmfMeans) {
  for (std::int64_t n : {5, 9, 25, 100}) {
    const auto pd = single_threshold(SettingSpec::with_n(Variant::Postdoc, n));
    EXPECT_NEAR(no_info_mean(n, pd), no_info_pmf(n, pd).mean(), 1e-9);
    EXPECT_NEAR(cutoff_mean(moser_cutoffs(n)), cutoff_pmf(n, moser_cutoffs(n)).mean(), 1e-9);
    EXPECT_NEAR(gm_mean(n, gm_best_choice_cutoffs(n)), gm_pmf(n, gm_best_choice_cutoffs(n)).mean(), 1e-9);
  }
}

TEST(ExactDistribution, EveryFiniteSettingNormalizes) {
  using P = SettingSpec::Params;
  for (Variant v : all_variants) {
    if (v == Variant::HouseSelling || v == Variant::PresmanSonin)
      continue;
    for (std::int64_t n : {1, 2, 7, 40}) {
      P p{.n = n};
      if (v == Variant::Smith)
        p.p = 0.5;
      if (v == Variant::GuseinZade)
        p.s = 3;
      if (v == Variant::SzajowskiCost)
        p.cost = 0.1;
      const auto s = SettingSpec::make(v, p);
      const auto d = exact_distribution(s, default_policy(s));
      expect_distribution(d);
      EXPECT_EQ(d.n, n);
    }
  }
  EXPECT_THROW(exact_distribution(SettingSpec::make(Variant::PresmanSonin, {.b = 10}), SingleThreshold{1, 1}),
               std::invalid_argument);
  EXPECT_THROW(exact_distribution(SettingSpec::with_n(Variant::Moser, 5), SingleThreshold{1, 1}),
               std::invalid_argument);
}

TEST(StagePmf, EqualsEnumeration) {
  for (std::int64_t n = 1; n <= 8; ++n) {
    for (int s : {2, 3, 5}) {
      const auto setting = SettingSpec::make(Variant::GuseinZade, {.n = n, .s = s});
      const auto st = stage_thresholds(setting);
      const auto exact = enumerate_exact(setting, st).distribution;
      const auto formula = stage_pmf(n, st);
      for (std::int64_t x = 0; x < n; ++x)
        EXPECT_NEAR(formula.pmf[x], exact.pmf[x], 1e-12) << n << ' ' << s << ' ' << x + 1;
    }
    const auto lind = SettingSpec::with_n(Variant::Lindley, n);
    const auto st = lindley_stages(n);
    const auto exact = enumerate_exact(lind, st).distribution;
    const auto formula = stage_pmf(n, st);
    for (std::int64_t x = 0; x < n; ++x)
      EXPECT_NEAR(formula.pmf[x], exact.pmf[x], 1e-12) << n << ' ' << x + 1;
  }
}

TEST(HouseSelling, Examples) {
  const auto a = house_selling_stats(0.001);
  EXPECT_NEAR(a.mean, 22.36, 0.005);
  EXPECT_EQ(a.median, 16);
  const auto b = house_selling_stats(0.01, {0.25, 0.75});
  EXPECT_NEAR(b.mean, 7.07, 0.005);
  EXPECT_EQ(b.median, 5);
  EXPECT_EQ(b.quantiles.at(0.25), 2);
  const auto c = house_selling_stats(0.5);
  EXPECT_EQ(c.mean, 1.0);
  EXPECT_EQ(c.median, 1);
  EXPECT_EQ(house_selling_stats(0.9).mean, 1.0);
  EXPECT_THROW(house_selling_stats(0.0), std::invalid_argument);
}

TEST(MultiStage, CdfAndQuantile) {
  const StageThresholds one{{0.3}};
  for (double m : {0.31, 0.5, 0.9})
    EXPECT_NEAR(multi_stage_cdf(one, m), 1.0 - 0.3 / m, 1e-15);
  EXPECT_EQ(multi_stage_cdf(one, 0.2), 0.0);
  EXPECT_NEAR(multi_stage_quantile(one, 0.5), 0.6, 1e-15);

  const auto lindley = lindley_stages(200);
  const double m = multi_stage_quantile(lindley, 0.5);
  EXPECT_NEAR(m, 0.48099, 1e-5);
  EXPECT_NEAR(multi_stage_cdf(lindley, m), 0.5, 1e-12);
  EXPECT_NEAR(m, std::sqrt(2.0) * std::pow(3.0, 0.25) / lindley_v_infinity(), 1e-12);

  const auto gz = [](int s) { return stage_thresholds(SettingSpec::make(Variant::GuseinZade, {.s = s})); };
  EXPECT_NEAR(multi_stage_quantile(gz(25), 0.5), 0.45545, 1e-5);
  EXPECT_NEAR(multi_stage_quantile(gz(10), 0.5), 0.52276, 1e-5);
  for (double x = 0.3; x < 1.0; x += 0.013) {
    const auto st = gz(10);
    const double f = multi_stage_cdf(st, x), g = multi_stage_cdf(st, x + 0.013);
    EXPECT_LE(f, g + 1e-15);
  }
}

TEST(MultiStage, MeanReducesToSingleThreshold) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 20; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(multi_stage_mean(StageThresholds{{x}}), asymptotic_fraction_single(x), 1e-15) << x;
  }
}

TEST(MultiStage, GuseinZadeMeans) {
  const auto mean = [](int s) {
    return multi_stage_mean(stage_thresholds(SettingSpec::make(Variant::GuseinZade, {.s = s})));
  };
  // Four printed decimals, one unit of slack.
  EXPECT_NEAR(mean(2), 0.6892, 1e-4);
  EXPECT_NEAR(mean(5), 0.6102, 1e-4);
  EXPECT_NEAR(mean(3), 0.6564, 1e-4);
  EXPECT_NEAR(mean(25), 0.4700, 1e-4);
  EXPECT_THROW(multi_stage_mean(StageThresholds{{0.5, 0.5}}), std::invalid_argument);
}

TEST(Lindley, Series) {
  const auto s = lindley_series(50);
  EXPECT_NEAR(s.partial_sum, 0.5895, 5e-5);
  EXPECT_NEAR(s.mean, 0.5065, 5e-5);
  EXPECT_NEAR(lindley_asymptotic_mean(), 0.5065, 5e-5);
  // The analytic tail bound V^2/3 * 2/(51*52*53) dominates the remainder.
  EXPECT_NEAR(s.tail_bound, 7.10e-5, 1e-7);
  EXPECT_GT(s.tail, 0.0);
  EXPECT_LT(s.tail, s.tail_bound);
  EXPECT_NEAR(lindley_v_infinity() * lindley_v_infinity() / 3.0, 4.99106, 1e-5);
}

TEST(FullInformation, Constants) {
  const double c = constants::gm_constant();
  EXPECT_NEAR(fi_mean_fraction(c), 0.580164, 1e-6);
  EXPECT_NEAR(fi_median_fraction(c), 0.585926, 1e-6);
  EXPECT_NEAR(fi_no_choice(c), 0.199505, 1e-6);
  EXPECT_NEAR(fi_mean_fraction(constants::fi_duration), 0.336134, 1e-6);
  EXPECT_NEAR(fi_median_fraction(constants::fi_duration), 0.279642, 1e-6);
  EXPECT_NEAR(fi_no_choice(constants::fi_duration), 0.032175, 1e-4);
  const double cb = constants::fi_best_choice_duration();
  EXPECT_NEAR(fi_mean_fraction(cb), 0.466785, 1e-6);
  EXPECT_NEAR(fi_median_fraction(cb), 0.42689, 1e-5);
  EXPECT_NEAR(fi_no_choice(cb), 0.10255, 1e-5);
  for (double k : {c, constants::fi_duration, cb})
    EXPECT_LT(std::abs(fi_median_residual(k, fi_median_fraction(k))), 1e-8);
}

TEST(AsymptoticReport, Rows) {
  const auto r = [](Variant v, SettingSpec::Params p = {}) { return asymptotic_report(SettingSpec::make(v, p)); };
  EXPECT_NEAR(r(Variant::Secretary).mean_fraction, 2.0 / e, 1e-15);
  EXPECT_NEAR(*r(Variant::Secretary).median_fraction, 2.0 / e, 1e-15);
  EXPECT_NEAR(r(Variant::Moser).mean_fraction, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(*r(Variant::Moser).median_fraction, 0.292893, 1e-6);
  EXPECT_NEAR(r(Variant::Postdoc).mean_fraction, (1.0 + std::numbers::ln2) / 2.0, 1e-15);
  EXPECT_EQ(*r(Variant::Postdoc).median_fraction, 1.0);
  const auto sak = r(Variant::Sakaguchi);
  EXPECT_NEAR(sak.mean_fraction, 1.5 / std::sqrt(e), 1e-15);
  EXPECT_NEAR(*sak.no_choice_prob, 1.0 / std::sqrt(e), 1e-15);
  EXPECT_NEAR(*sak.conditional_mean, 1.0 / (2.0 * (std::sqrt(e) - 1.0)), 1e-15);
  EXPECT_NEAR(r(Variant::NoInfoDuration).mean_fraction, 0.406006, 1e-6);
  EXPECT_NEAR(*r(Variant::NoInfoDuration).median_fraction, 0.270671, 1e-6);
  const double w = specfun::lambert_w(-2.0 / (e * e), specfun::LambertBranch::principal);
  const auto bcd = r(Variant::NoInfoBestChoiceDuration);
  EXPECT_NEAR(bcd.mean_fraction, -0.5 * w * (3.0 + w), 1e-12);
  EXPECT_NEAR(*bcd.median_fraction, -w, 1e-12);
  const auto gm = r(Variant::GMBestChoice);
  EXPECT_NEAR(gm.mean_fraction, 0.580164, 1e-6);
  EXPECT_NEAR(*gm.median_fraction, 0.585926, 1e-6);
  EXPECT_NEAR(*gm.no_choice_prob, 0.199505, 1e-6);
  EXPECT_NEAR(r(Variant::Lindley).mean_fraction, 0.5065, 5e-5);
  EXPECT_NEAR(*r(Variant::Lindley).median_fraction, 0.4810, 5e-5);
  EXPECT_NEAR(r(Variant::GuseinZade).mean_fraction, 0.2834, 1e-15);
  EXPECT_NEAR(r(Variant::GuseinZade, {.s = 10}).mean_fraction, 0.5450, 1e-4);
  // Search continues past refused offers, so E(T)/N = x (1 + 1/p).
  EXPECT_NEAR(r(Variant::Smith, {.p = 0.5}).mean_fraction, 0.75, 1e-15);
  // Pool size uniform on 1..b: the limit of E(T/n) is 5/e^2.
  EXPECT_NEAR(r(Variant::PresmanSonin, {.b = 1000}).mean_fraction, 5.0 / (e * e), 1e-15);
  EXPECT_THROW(r(Variant::HouseSelling, {.cost = 0.1}), UnsupportedVariant);
}
