#include <doctest.h>

#include <random>

#include "hurstlab/diffusion.hpp"

namespace hl = hurstlab;

TEST_CASE("displacements are all overlapping window sums") {
  hl::Vector v(5);
  v << 1, 2, 3, 4, 5;
  const hl::RawSeries s(v);

  const auto e1 = hl::displacements(s, 1);
  CHECK(e1.trajectory_count() == 5);
  CHECK(e1.displacements[2] == 3);

  const auto e3 = hl::displacements(s, 3);
  REQUIRE(e3.trajectory_count() == 3);
  CHECK(e3.displacements[0] == 6);
  CHECK(e3.displacements[1] == 9);
  CHECK(e3.displacements[2] == 12);

  const auto e5 = hl::displacements(s, 5);
  REQUIRE(e5.trajectory_count() == 1);
  CHECK(e5.displacements[0] == 15);

  CHECK_THROWS_AS(hl::displacements(s, 0), hl::DataError);
  CHECK_THROWS_AS(hl::displacements(s, 6), hl::DataError);
}

TEST_CASE("rolling sums agree with direct sums on random input") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  hl::Vector v(2000);
  for (int i = 0; i < 2000; ++i) v[i] = gauss(rng);
  const hl::RawSeries s(v);
  for (const hl::Index len : {2, 17, 250}) {
    const auto ens = hl::displacements(s, len);
    for (hl::Index i = 0; i < ens.trajectory_count(); i += 37) {
      CHECK(ens.displacements[i] ==
            doctest::Approx(v.segment(i, len).sum()).epsilon(1e-12));
    }
  }
}

TEST_CASE("bin width scales the standard deviation") {
  hl::SeriesStats st;
  st.std = 2.0;
  CHECK(hl::bin_width(st, 0.85) == doctest::Approx(1.7));
  CHECK_THROWS_AS(hl::bin_width(st, 0.0), hl::DataError);
  st.std = 0.0;
  CHECK_THROWS_AS(hl::bin_width(st, 0.85), hl::DataError);
}

TEST_CASE("histogram covers the range and keeps empty interior bins") {
  hl::DisplacementEnsemble ens;
  ens.s = 1;
  ens.displacements.resize(5);
  ens.displacements << 0.0, 0.1, 0.2, 0.95, 1.0;
  const auto h = hl::build_histogram(ens, 0.25);

  CHECK(h.total == 5);
  CHECK(h.grid.x_min == 0.0);
  REQUIRE(h.counts.size() == 4);  // ceil(1.0 / 0.25)
  CHECK(h.counts[0] == 3);
  CHECK(h.counts[1] == 0);
  CHECK(h.counts[2] == 0);
  CHECK(h.counts[3] == 2);  // the maximum lands in the last, right-closed bin
  CHECK(h.counts.sum() == h.total);
}

TEST_CASE("histogram of identical displacements is a single bin") {
  hl::DisplacementEnsemble ens;
  ens.s = 2;
  ens.displacements = hl::Vector::Constant(4, 3.5);
  const auto h = hl::build_histogram(ens, 0.5);
  REQUIRE(h.counts.size() == 1);
  CHECK(h.counts[0] == 4);
}
