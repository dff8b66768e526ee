#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "beta_oracle.hpp"
#include "hurstlab/entropy.hpp"

namespace hl = hurstlab;

namespace {

hl::Histogram make_hist(const std::vector<long>& counts) {
  hl::Histogram h;
  h.grid = hl::BinGrid{0.0, 1.0, static_cast<hl::Index>(counts.size())};
  h.counts = hl::IndexVector::Zero(static_cast<hl::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    h.counts[static_cast<hl::Index>(i)] = counts[i];
    h.total += counts[i];
  }
  return h;
}

}  // namespace

TEST_CASE("estimator names round-trip") {
  for (const auto e : {hl::Estimator::naive, hl::Estimator::corrected,
                       hl::Estimator::balanced}) {
    CHECK(hl::estimator_from_name(hl::estimator_name(e)) == e);
  }
  CHECK_THROWS_AS(hl::estimator_from_name("best"), std::invalid_argument);
}

TEST_CASE("naive entropy of a uniform histogram is ln M") {
  const auto h = make_hist({5, 5, 5, 5});
  CHECK(hl::naive_entropy(h).value == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(hl::naive_entropy(h).sample_count == 20);
  CHECK(hl::naive_entropy(h).bin_count == 4);
}

TEST_CASE("naive entropy treats empty bins as zero contribution") {
  CHECK(hl::naive_entropy(make_hist({10, 0, 0})).value == 0.0);
  CHECK(hl::naive_entropy(make_hist({3, 0, 3})).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("corrected entropy adds (M-1)/(2 total)") {
  const auto h = make_hist({7, 2, 1, 0});
  const double naive = hl::naive_entropy(h).value;
  CHECK(hl::corrected_entropy(h).value ==
        doctest::Approx(naive + 3.0 / 20.0).epsilon(1e-14));
}

TEST_CASE("balanced term matches the harmonic closed form") {
  for (const long total : {1L, 2L, 10L, 100L, 5000L}) {
    for (long n = 0; n <= total; n += std::max(total / 7, 1L)) {
      double tail = 0;
      for (long k = n + 2; k <= total + 2; ++k) tail += 1.0 / static_cast<double>(k);
      const double expected =
          static_cast<double>(n + 1) / static_cast<double>(total + 2) * tail;
      CHECK(hl::balanced_term(n, total) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(hl::balanced_term(3, 2), std::out_of_range);
  CHECK_THROWS_AS(hl::balanced_term(0, 0), hl::DataError);
}

TEST_CASE("balanced term matches quadrature of the posterior mean") {
  // spot checks; the exhaustive sweep over total <= 64 runs in the
  // acceptance binary
  for (const auto [n, total] : std::vector<std::pair<long, long>>{
           {0, 1}, {1, 1}, {0, 12}, {5, 12}, {12, 12}, {20, 40}, {63, 64}}) {
    CHECK(std::abs(hl::balanced_term(n, total) -
                   hurstlab_test::balanced_term_oracle(n, total)) < 1e-10);
  }
}

TEST_CASE("balanced entropy sums terms over all bins, empty ones included") {
  const auto h = make_hist({4, 0, 2, 0, 0});
  double expected = 0;
  for (const long n : {4L, 0L, 2L, 0L, 0L}) expected += hl::balanced_term(n, 6);
  CHECK(hl::balanced_entropy(h).value == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("balanced beats naive on average for a multinomial source") {
  // Balanced is designed to trade a little bias for less variance; check the
  // mean absolute error ordering over repeated draws.
  const std::vector<double> probs{0.4, 0.3, 0.2, 0.1};
  double truth = 0;
  for (const double p : probs) truth -= p * std::log(p);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni;
  const int draws = 4000, total = 20;
  double err_naive = 0, err_balanced = 0;
  for (int d = 0; d < draws; ++d) {
    std::vector<long> counts(probs.size(), 0);
    for (int i = 0; i < total; ++i) {
      double u = uni(rng), acc = 0;
      for (std::size_t j = 0; j < probs.size(); ++j) {
        acc += probs[j];
        if (u <= acc || j + 1 == probs.size()) {
          ++counts[j];
          break;
        }
      }
    }
    const auto h = make_hist(counts);
    err_naive += std::abs(hl::naive_entropy(h).value - truth);
    err_balanced += std::abs(hl::balanced_entropy(h).value - truth);
  }
  CHECK(err_balanced < err_naive);
}
