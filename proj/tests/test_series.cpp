#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "hurstlab/series.hpp"

namespace hl = hurstlab;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("plain format skips blanks and comments") {
  const auto p = write_temp("hl_plain.txt",
                            "# header comment\n"
                            "1.5\n"
                            "\n"
                            "  -2.25  \n"
                            "# trailing\n"
                            "3e-2\n");
  const auto s = hl::load_series(p, hl::SeriesFormat::plain);
  REQUIRE(s.size() == 3);
  CHECK(s.values[0] == 1.5);
  CHECK(s.values[1] == -2.25);
  CHECK(s.values[2] == 0.03);
  CHECK(s.label == "hl_plain");
}

TEST_CASE("plain format reports 1-based line of bad token") {
  const auto p = write_temp("hl_bad.txt", "1.0\n2.0\noops\n");
  try {
    hl::load_series(p, hl::SeriesFormat::plain);
    FAIL("expected ParseError");
  } catch (const hl::ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("csv column selection with quoting") {
  const auto p = write_temp("hl_data.csv",
                            "date,\"close, adjusted\",volume\n"
                            "2001-01-02,100.5,9\n"
                            "2001-01-03,\"101.25\",12\n");
  const auto s = hl::load_series(p, hl::SeriesFormat::csv, "close, adjusted");
  REQUIRE(s.size() == 2);
  CHECK(s.values[0] == 100.5);
  CHECK(s.values[1] == 101.25);
  CHECK_THROWS_AS(hl::load_series(p, hl::SeriesFormat::csv, "nope"),
                  hl::ParseError);
}

TEST_CASE("save then load round-trips at full precision") {
  hl::Vector v(3);
  v << 0.1, -1.0 / 3.0, 1e-17;
  const hl::RawSeries s(v, "rt");
  const auto p = fs::temp_directory_path() / "hl_rt.txt";
  hl::save_series(s, p);
  const auto back = hl::load_series(p, hl::SeriesFormat::plain);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(back.values[i] == v[i]);
}

TEST_CASE("series validates finiteness and size") {
  CHECK_THROWS_AS(hl::RawSeries{hl::Vector{}}, hl::DataError);
  hl::Vector v(2);
  v << 1.0, std::nan("");
  CHECK_THROWS_AS(hl::RawSeries{v}, hl::DataError);
}

TEST_CASE("log-ratio returns at horizon delta_t") {
  hl::Vector v(8);
  for (int i = 0; i < 8; ++i) v[i] = 100.0 * std::pow(1.01, i);
  const hl::RawSeries prices(v);
  const auto r = hl::compute_returns(prices, 5);
  REQUIRE(r.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(r.values[i] == doctest::Approx(5 * std::log(1.01)).epsilon(1e-12));

  const auto r10 = hl::compute_returns(prices, 5, 10.0);
  CHECK(r10.values[0] ==
        doctest::Approx(5 * std::log(1.01) / std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("literal returns divide logs and reject p == 1") {
  hl::Vector v(3);
  v << 2.0, 4.0, 8.0;
  const auto r = hl::compute_returns(hl::RawSeries(v), 1, 2.0,
                                     hl::ReturnMode::literal);
  REQUIRE(r.size() == 2);
  CHECK(r.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(1.5).epsilon(1e-12));

  v << 2.0, 1.0, 8.0;
  CHECK_THROWS_AS(
      hl::compute_returns(hl::RawSeries(v), 1, 2.0, hl::ReturnMode::literal),
      hl::DataError);
}

TEST_CASE("returns reject non-positive prices and bad horizons") {
  hl::Vector v(4);
  v << 1.0, 2.0, -3.0, 4.0;
  CHECK_THROWS_AS(hl::compute_returns(hl::RawSeries(v), 1), hl::DataError);
  v << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(hl::compute_returns(hl::RawSeries(v), 4), hl::DataError);
}

TEST_CASE("stats uses population variance") {
  hl::Vector v(4);
  v << 1.0, 2.0, 3.0, 4.0;
  const auto st = hl::stats(hl::RawSeries(v));
  CHECK(st.mean == doctest::Approx(2.5));
  CHECK(st.variance == doctest::Approx(1.25));
  CHECK(st.std == doctest::Approx(std::sqrt(1.25)));
}
