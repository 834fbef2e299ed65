#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sdma/link_metrics.hpp"
#include "sdma/random.hpp"

using namespace sdma;

TEST_CASE("default MCS table matches the eight-entry list") {
  const McsTable table = McsTable::default_table();
  REQUIRE(table.size() == 8);
  const int bits[] = {1, 2, 2, 4, 4, 6, 6, 6};
  const double rates[] = {0.5, 0.5, 0.75, 0.5, 0.75, 2.0 / 3.0, 0.75,
                          5.0 / 6.0};
  const double thresholds[] = {1.4, 4.4, 6.5, 8.6, 12.0, 15.8, 17.2, 18.8};
  for (int i = 0; i < 8; ++i) {
    CHECK(table.at(i).index == i);
    CHECK(table.at(i).bits_per_symbol == bits[i]);
    CHECK(table.at(i).code_rate == doctest::Approx(rates[i]));
    CHECK(table.at(i).threshold_db == doctest::Approx(thresholds[i]));
  }
}

TEST_CASE("MCS table parses text with comments and fraction rates") {
  std::istringstream in(
      "# index bits rate threshold\n"
      "0 1 1/2 1.4\n"
      "1 2 0.5 4.4   # decimal rate\n"
      "\n"
      "2 4 3/4 9.0\n");
  const McsTable table = McsTable::parse(in, "inline");
  REQUIRE(table.size() == 3);
  CHECK(table.at(1).code_rate == doctest::Approx(0.5));
  CHECK(table.at(2).threshold_db == doctest::Approx(9.0));
}

TEST_CASE("MCS table parse errors name the offending line") {
  SUBCASE("non-consecutive index") {
    std::istringstream in("0 1 1/2 1.4\n2 2 1/2 4.4\n");
    CHECK_THROWS_WITH_AS(McsTable::parse(in, "bad"),
                         doctest::Contains("bad:2"), std::runtime_error);
  }
  SUBCASE("non-increasing threshold") {
    std::istringstream in("0 1 1/2 5.0\n1 2 1/2 4.4\n");
    CHECK_THROWS_WITH_AS(McsTable::parse(in, "bad"),
                         doctest::Contains("bad:2"), std::runtime_error);
  }
  SUBCASE("malformed field") {
    std::istringstream in("0 1 half 1.4\n");
    CHECK_THROWS_WITH_AS(McsTable::parse(in, "bad"),
                         doctest::Contains("bad:1"), std::runtime_error);
  }
  SUBCASE("empty table") {
    std::istringstream in("# nothing here\n");
    CHECK_THROWS_AS(McsTable::parse(in, "bad"), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(McsTable::load("/nonexistent/mcs.txt"),
                    std::runtime_error);
  }
}

TEST_CASE("ppsnr reproduces the closed-form cases") {
  Eigen::VectorXcd h(2);
  h << 2.0, 1.0;
  const Eigen::VectorXcd w = h / h.norm();
  const double nv = 5.0118723362727145e-12;
  SUBCASE("matched filter, no interference") {
    CHECK(ppsnr(w, h, {}, nv) ==
          doctest::Approx(h.squaredNorm() / nv).epsilon(1e-12));
  }
  SUBCASE("orthogonal receive vector") {
    Eigen::VectorXcd w_perp(2);
    w_perp << 1.0 / std::sqrt(5.0), -2.0 / std::sqrt(5.0);
    CHECK(ppsnr(w_perp, h, {}, nv) == doctest::Approx(0.0));
  }
  SUBCASE("equal-power co-channel interferer") {
    Eigen::VectorXcd e1(2);
    e1 << 1.0, 0.0;
    CHECK(ppsnr(e1, e1, {e1}, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("non-positive noise is rejected") {
    CHECK_THROWS_AS(ppsnr(w, h, {}, 0.0), std::invalid_argument);
  }
  SUBCASE("common phase on w leaves the value unchanged") {
    const double base = ppsnr(w, h, {h.reverse()}, 1.0);
    const std::complex<double> rot = std::polar(1.0, 1.1);
    CHECK(ppsnr(rot * w, h, {h.reverse()}, 1.0) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("effective PPSNR compresses mean and variance in dB") {
  CHECK(effective_ppsnr(std::vector<double>(64, 10.0), kEffSnrAlpha, 0.0) ==
        doctest::Approx(10.0));
  std::vector<double> split(32, 8.0);
  split.insert(split.end(), 32, 12.0);
  CHECK(effective_ppsnr(split, kEffSnrAlpha, 0.0) == doctest::Approx(9.5));
  CHECK(effective_ppsnr(std::vector<double>(64, 10.0), kEffSnrAlpha, 2.0) ==
        doctest::Approx(8.0));
  CHECK_THROWS_AS(effective_ppsnr({}, kEffSnrAlpha, 0.0),
                  std::invalid_argument);
}

TEST_CASE("effective PPSNR never exceeds the subcarrier mean") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> db(64);
    double mean = 0.0;
    for (double& v : db) {
      v = rng.uniform(-5.0, 25.0);
      mean += v;
    }
    mean /= db.size();
    CHECK(effective_ppsnr(db, kEffSnrAlpha, 0.0) <= mean + 1e-12);
  }
}

TEST_CASE("MCS selection picks the highest attainable entry") {
  const McsTable table = McsTable::default_table();
  CHECK(select_mcs(12.5, table) == 4);
  CHECK(select_mcs(1.0, table) == std::nullopt);
  CHECK(select_mcs(19.0, table) == 7);
  // non-strict comparison keeps exact threshold hits usable
  CHECK(select_mcs(1.4, table) == 0);
  CHECK(select_mcs(15.8, table) == 5);
}

TEST_CASE("MCS selection is monotone in the effective SNR") {
  const McsTable table = McsTable::default_table();
  int prev = -1;
  for (double db = -2.0; db <= 25.0; db += 0.1) {
    const auto sel = select_mcs(db, table);
    const int cur = sel ? *sel : -1;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("MCS data rates follow the bandwidth formula") {
  const SimParams params;
  const McsTable table = McsTable::default_table();
  const double expected[] = {8, 16, 24, 32, 48, 64, 72, 80};
  double prev = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double rate = mcs_rate_mbps(table.at(i), params);
    CHECK(rate == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(rate > prev);
    prev = rate;
  }
}

TEST_CASE("viability judgment compares the choice against the truth") {
  const SimParams params;
  const McsTable table = McsTable::default_table();
  SUBCASE("perfect-CSI selection is always honored") {
    for (double db = 1.4; db <= 25.0; db += 0.37) {
      const auto sel = select_mcs(db, table);
      REQUIRE(sel.has_value());
      const LinkOutcome out = judge_link(sel, db, table, params);
      CHECK(out.viable);
      CHECK(out.chosen_mcs == sel);
      CHECK(out.throughput_mbps ==
            doctest::Approx(mcs_rate_mbps(table.at(*sel), params)));
    }
  }
  SUBCASE("optimistic estimate fails against the truth") {
    const LinkOutcome out = judge_link(5, 14.0, table, params);
    CHECK_FALSE(out.viable);
    CHECK(out.throughput_mbps == 0.0);
    CHECK(out.chosen_mcs == 5);
  }
  SUBCASE("no selection yields zero throughput") {
    const LinkOutcome out = judge_link(std::nullopt, 30.0, table, params);
    CHECK_FALSE(out.viable);
    CHECK(out.throughput_mbps == 0.0);
    CHECK_FALSE(out.chosen_mcs.has_value());
  }
}

TEST_CASE("dB conversion keeps nulled subcarriers finite") {
  CHECK(to_db(1.0) == doctest::Approx(0.0));
  CHECK(to_db(100.0) == doctest::Approx(20.0));
  CHECK(std::isfinite(to_db(0.0)));
  CHECK(to_db(0.0) < -1000.0);
}
