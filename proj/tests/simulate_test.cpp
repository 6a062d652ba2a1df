#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "edge_outage/analytic.hpp"
#include "edge_outage/oracle.hpp"
#include "edge_outage/simulate.hpp"

namespace edge_outage {
namespace {

TEST(SampleRequest, Examples) {
  EXPECT_EQ(sample_request(std::vector<double>{1.0}, 0.7), 1);
  const std::vector<double> half{0.5, 1.0};
  EXPECT_EQ(sample_request(half, 0.49), 1);
  EXPECT_EQ(sample_request(half, 0.5), 2);
  EXPECT_EQ(sample_request(half, 0.0), 1);
  const auto zipf = cumulative(request_pmf(ZipfRequests{1.0}, 2));
  EXPECT_EQ(sample_request(zipf, 0.66), 1);
  EXPECT_EQ(sample_request(zipf, 0.67), 2);
}

TEST(SampleRequest, MalformedCdf) {
  EXPECT_THROW(sample_request(std::vector<double>{}, 0.1), DomainError);
  EXPECT_THROW(sample_request(std::vector<double>{0.6, 0.4, 1.0}, 0.1), DomainError);
  EXPECT_THROW(sample_request(std::vector<double>{0.2, 0.9}, 0.1), DomainError);
  EXPECT_THROW(sample_request(std::vector<double>{1.0}, 1.0), DomainError);
}

TEST(TrialRng, StreamsAreDeterministicAndDistinct) {
  TrialRng a(42, 7);
  TrialRng b(42, 7);
  TrialRng c(42, 8);
  TrialRng d(43, 7);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(TrialRng, BoundedDrawsAreUniform) {
  std::vector<int> hist(7, 0);
  for (std::uint64_t t = 0; t < 70000; ++t) {
    TrialRng r(5, t);
    ++hist[r.below(7)];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 450);
}

TEST(RunTrial, TrivialSuccesses) {
  TrialRng rng(1, 1);
  EXPECT_TRUE(run_trial({10, 2, 5, 5}, CacheScheme::rap, std::nullopt, rng));
  EXPECT_TRUE(run_trial({10, 10, 0, 50}, CacheScheme::rap, std::nullopt, rng));
  EXPECT_TRUE(run_trial({10, 10, 0, 50}, CacheScheme::mop, 1.0, rng));
}

TEST(RunTrial, CapacityZeroFailsOnAnyMiss) {
  // N = 2, M = 1, C = 0, d = 1: outage iff the single request misses (p = 1/2).
  const auto rep = monte_carlo_outage({2, 1, 0, 1}, CacheScheme::rap, std::nullopt, {200000, 3, 1});
  EXPECT_NEAR(rep.p_out_hat, 0.5, 4.0 * std::sqrt(0.25 / 200000.0));
}

TEST(MonteCarloOutage, SmallRapInstanceMatchesOracle) {
  const SystemConfig cfg{3, 1, 1, 2};
  const auto rep = monte_carlo_outage(cfg, CacheScheme::rap, std::nullopt, {1000000, 17, 2});
  const double truth = brute_force_outage(cfg, CacheScheme::rap).p_out;
  EXPECT_NEAR(rep.p_out_hat, truth, 3.0 * rep.ci_half_width_95);
  EXPECT_EQ(rep.p_out_hat, static_cast<double>(rep.outage_count) / 1e6);
}

TEST(MonteCarloOutage, FullCacheNeverFails) {
  const auto rep = monte_carlo_outage({20, 20, 0, 30}, CacheScheme::mop, 1.0, {10000, 1, 1});
  EXPECT_EQ(rep.outage_count, 0U);
}

TEST(MonteCarloOutage, IndependentOfWorkerCount) {
  const SystemConfig cfg{100, 10, 15, 27};
  const auto one = monte_carlo_outage(cfg, CacheScheme::mop, 1.0, {20000, 99, 1});
  for (unsigned w : {4U, 16U}) {
    const auto many = monte_carlo_outage(cfg, CacheScheme::mop, 1.0, {20000, 99, w});
    EXPECT_EQ(one.outage_count, many.outage_count) << "workers=" << w;
  }
  const auto rap1 = monte_carlo_outage({100, 10, 40, 50}, CacheScheme::rap, std::nullopt, {20000, 5, 1});
  const auto rap16 = monte_carlo_outage({100, 10, 40, 50}, CacheScheme::rap, std::nullopt, {20000, 5, 16});
  EXPECT_EQ(rap1.outage_count, rap16.outage_count);
}

TEST(MonteCarloOutage, MopSmallInstanceMatchesOracle) {
  const SystemConfig cfg{4, 1, 1, 4};
  const auto rep = monte_carlo_outage(cfg, CacheScheme::mop, 0.8, {400000, 8, 2});
  const double truth = brute_force_outage(cfg, CacheScheme::mop, 0.8).p_out;
  const double se = std::sqrt(truth * (1 - truth) / 400000.0);
  EXPECT_NEAR(rep.p_out_hat, truth, 4.0 * se);
}

TEST(MonteCarloOutage, ResampledAndFixedRapCacheAgree) {
  for (const SystemConfig cfg : {SystemConfig{100, 10, 30, 40}, SystemConfig{20, 5, 4, 8}}) {
    SimulationOptions resample{100000, 21, 2, RapCacheMode::resample};
    SimulationOptions fixed{100000, 22, 2, RapCacheMode::fixed};
    const auto a = monte_carlo_outage(cfg, CacheScheme::rap, std::nullopt, resample);
    const auto b = monte_carlo_outage(cfg, CacheScheme::rap, std::nullopt, fixed);
    const double se = std::sqrt(a.p_out_hat * (1 - a.p_out_hat) / 1e5 + b.p_out_hat * (1 - b.p_out_hat) / 1e5);
    EXPECT_LE(std::abs(a.p_out_hat - b.p_out_hat), 4.0 * se + 1e-12);
  }
}

TEST(Wilson, KnownValues) {
  const auto w = wilson_interval(0, 100);
  EXPECT_NEAR(w.low, 0.0, 1e-15);
  EXPECT_NEAR(w.high, 0.0370, 1e-4);
  const auto h = wilson_interval(50, 100);
  EXPECT_NEAR(h.low, 0.4038, 1e-4);
  EXPECT_NEAR(h.high, 0.5962, 1e-4);
  EXPECT_THROW(wilson_interval(0, 0), DomainError);
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) tv += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
  return tv / 2.0;
}

TEST(MonteCarloOccupancy, SingleBin) {
  const auto pmf = monte_carlo_occupancy(std::vector<double>{1.0}, 6, 1000, 1);
  EXPECT_EQ(pmf.at(1), 1.0);
  EXPECT_EQ(pmf.method, OccupancyMethod::monte_carlo);
}

TEST(MonteCarloOccupancy, UniformMatchesDp) {
  const std::vector<double> q(5, 0.2);
  const auto mc = monte_carlo_occupancy(q, 3, 1000000, 4, 2);
  EXPECT_LE(total_variation(mc.probs, occupancy_uniform_pmf(5, 3).probs), 0.005);
}

TEST(MonteCarloOccupancy, SkewedMeanAtHundredBalls) {
  const auto q = conditional_noncached_weights({100, 0, 0, 1}, 1.5);
  const auto mc = monte_carlo_occupancy(q, 100, 100000, 12, 2);
  double mean = 0.0;
  for (std::size_t z = 0; z < mc.probs.size(); ++z) mean += static_cast<double>(z) * mc.probs[z];
  EXPECT_NEAR(mean, 23.36, 0.15);
}

// The simulated mean matches the exact m - sum (1 - q_t)^k; the Gaussian mean
// uses e^{-k q_t} in place of (1 - q_t)^k and sits slightly below it.
TEST(MonteCarloOccupancy, MeanTracksExactAndGaussianMeans) {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto q = conditional_noncached_weights({100, 0, 0, 1}, alpha);
    for (std::int64_t k : {20, 50, 100}) {
      const std::uint64_t trials = 20000;
      const auto mc = monte_carlo_occupancy(q, k, trials, 31, 2);
      double mean = 0.0;
      double sq = 0.0;
      for (std::size_t z = 0; z < mc.probs.size(); ++z) {
        mean += static_cast<double>(z) * mc.probs[z];
        sq += static_cast<double>(z * z) * mc.probs[z];
      }
      const double sd = std::sqrt(std::max(0.0, sq - mean * mean));
      double exact = 0.0;
      for (double qt : q) exact += 1.0 - std::pow(1.0 - qt, static_cast<double>(k));
      const double mu = gaussian_params(k, q).mu_k;
      EXPECT_LE(std::abs(mean - exact), 4.0 * sd / std::sqrt(static_cast<double>(trials)))
          << "alpha=" << alpha << " k=" << k;
      EXPECT_LE(mu, exact);
      EXPECT_LE(exact - mu, 0.5) << "alpha=" << alpha << " k=" << k;
    }
  }
}

// Envelope around the Gaussian mean itself. Its e^{-k q_t} terms bias it low
// by up to about 0.15 at alpha = 0.5, so some cells are expected to fail.
TEST(MonteCarloOccupancy, MeanWithinEnvelopeOfGaussianMean) {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto q = conditional_noncached_weights({100, 0, 0, 1}, alpha);
    for (std::int64_t k : {20, 50, 100}) {
      const std::uint64_t trials = 100000;
      const auto mc = monte_carlo_occupancy(q, k, trials, 41, 2);
      double mean = 0.0;
      double sq = 0.0;
      for (std::size_t z = 0; z < mc.probs.size(); ++z) {
        mean += static_cast<double>(z) * mc.probs[z];
        sq += static_cast<double>(z * z) * mc.probs[z];
      }
      const double sd = std::sqrt(std::max(0.0, sq - mean * mean));
      const double mu = gaussian_params(k, q).mu_k;
      EXPECT_LE(std::abs(mean - mu), 3.0 * sd / std::sqrt(static_cast<double>(trials)) + 0.05)
          << "alpha=" << alpha << " k=" << k;
    }
  }
}

TEST(MonteCarloOccupancy, GaussianTracksSimulationForHundredRequests) {
  const auto q = conditional_noncached_weights({100, 0, 0, 1}, 1.0);
  const auto mc = monte_carlo_occupancy(q, 100, 200000, 77, 2);
  const auto approx = p_Z_gaussian(100, q);
  EXPECT_LE(total_variation(mc.probs, approx.probs), 0.05);
}

}  // namespace
}  // namespace edge_outage
