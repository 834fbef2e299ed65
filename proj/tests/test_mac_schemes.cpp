#include <doctest.h>

#include <cmath>

#include "sdma/beamforming.hpp"
#include "sdma/mac_schemes.hpp"

using namespace sdma;

namespace {

SchemeConfig concurrent_cfg(TxStrategy tx, RxStrategy rx, bool adaptive,
                            int fixed = 0) {
  SchemeConfig cfg;
  cfg.name = "test";
  cfg.kind = SchemeKind::Concurrent;
  cfg.tx_strategy = tx;
  cfg.rx_strategy = rx;
  cfg.adaptive_mcs = adaptive;
  cfg.fixed_mcs = fixed;
  return cfg;
}

SchemeConfig noncon_cfg() {
  SchemeConfig cfg;
  cfg.name = "test-noncon";
  cfg.kind = SchemeKind::NonConcurrent;
  cfg.adaptive_mcs = true;
  return cfg;
}

ChannelSet make_channel_set(std::vector<Eigen::MatrixXcd> per_subcarrier,
                            double gain) {
  ChannelSet cs;
  cs.n_links = 1;
  cs.n_antennas = static_cast<int>(per_subcarrier[0].rows());
  cs.n_subcarriers = static_cast<int>(per_subcarrier.size());
  cs.true_channels = std::move(per_subcarrier);
  cs.pathloss_gains = {gain};
  cs.noise_seed = 7;
  return cs;
}

Topology make_topology(int k) {
  Topology topo;
  topo.links.resize(k);
  for (int q = 0; q < k; ++q) {
    topo.links[q].tx_position = Eigen::Vector2d(0.0, q);
    topo.links[q].rx_position = Eigen::Vector2d(5.0, q);
    topo.access_order.push_back(q);
  }
  return topo;
}

// The first m links of a generated network, with matching channels.
ChannelSet subset_channels(const ChannelSet& cs, int m) {
  ChannelSet sub;
  sub.n_links = m;
  sub.n_antennas = cs.n_antennas;
  sub.n_subcarriers = cs.n_subcarriers;
  sub.est_noise_var = cs.est_noise_var;
  sub.noise_seed = cs.noise_seed;
  for (int rx = 0; rx < m; ++rx) {
    for (int tx = 0; tx < m; ++tx) {
      sub.pathloss_gains.push_back(cs.gain(rx, tx));
      for (int i = 0; i < cs.n_subcarriers; ++i)
        sub.true_channels.push_back(cs.channel(rx, tx, i));
    }
  }
  return sub;
}

}  // namespace

TEST_CASE("single concurrent link: omni TX and matched-filter RX") {
  SimParams params;
  Rng rng(3);
  const Topology topo = generate_topology(1, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  const McsTable table = McsTable::default_table();
  const auto cfg = concurrent_cfg(TxStrategy::Beamnull, RxStrategy::Zf, false);
  const SchemeResult result = run_concurrent(cfg, cs, topo, params, table);

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
  e1(0) = 1.0;
  std::vector<double> true_db;
  for (int i = 0; i < params.n_subcarriers; ++i) {
    CHECK(result.beams.tx_vectors[0][i] == e1);
    const Eigen::VectorXcd h =
        effective_channel(cs.channel(0, 0, i), cs.gain(0, 0), params, e1);
    CHECK((result.beams.rx_vectors[0][i] - h / h.norm()).norm() < 1e-9);
    true_db.push_back(to_db(h.squaredNorm() / params.noise_var_mw));
  }
  const double eff = effective_ppsnr(true_db, kEffSnrAlpha, 0.0);
  CHECK(result.per_link[0].viable == (eff >= table.at(0).threshold_db));
  CHECK(result.sum_throughput_mbps ==
        (result.per_link[0].viable ? doctest::Approx(8.0)
                                   : doctest::Approx(0.0)));
}

TEST_CASE("prior links see no interference from later accessors") {
  SimParams params;
  const McsTable table = McsTable::default_table();
  for (const TxStrategy strategy :
       {TxStrategy::Beamnull, TxStrategy::Beamform}) {
    for (const int k : {2, 4}) {
      Rng rng(100 + k);
      const Topology topo = generate_topology(k, params, rng);
      const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
      const auto cfg = concurrent_cfg(strategy, RxStrategy::Zf, false);
      const SchemeResult r = run_concurrent(cfg, cs, topo, params, table);
      for (int i = 0; i < params.n_subcarriers; ++i) {
        for (int pos = 0; pos < k; ++pos) {
          const int q_new = topo.access_order[pos];
          CHECK(std::abs(r.beams.tx_vectors[q_new][i].norm() - 1.0) < 1e-9);
          CHECK(std::abs(r.beams.rx_vectors[q_new][i].norm() - 1.0) < 1e-9);
          for (int p = 0; p < pos; ++p) {
            const int q = topo.access_order[p];
            const Eigen::VectorXcd col = effective_channel(
                cs.channel(q, q_new, i), cs.gain(q, q_new), params,
                r.beams.tx_vectors[q_new][i]);
            const double residual =
                std::abs(r.beams.rx_vectors[q][i].dot(col)) / col.norm();
            CHECK(residual <= 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("universal MMSE never loses to ZF or MMSE on a shared topology") {
  SimParams params;
  const McsTable table = McsTable::default_table();
  const auto cfg_zf = concurrent_cfg(TxStrategy::Beamnull, RxStrategy::Zf,
                                     false);
  const auto cfg_mmse = concurrent_cfg(TxStrategy::Beamnull, RxStrategy::Mmse,
                                       false);
  const auto cfg_u = concurrent_cfg(TxStrategy::Beamnull,
                                    RxStrategy::UniversalMmse, false);
  for (int t = 0; t < 30; ++t) {
    Rng rng(1000 + t);
    const Topology topo = generate_topology(4, params, rng);
    const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
    const double zf = run_concurrent(cfg_zf, cs, topo, params, table)
                          .sum_throughput_mbps;
    const double mmse = run_concurrent(cfg_mmse, cs, topo, params, table)
                            .sum_throughput_mbps;
    const double u = run_concurrent(cfg_u, cs, topo, params, table)
                         .sum_throughput_mbps;
    CHECK(u >= zf);
    CHECK(u >= mmse);
    CHECK(u <= 4 * 80.0);
  }
}

TEST_CASE("TX vectors depend only on earlier accessors") {
  SimParams params;
  const McsTable table = McsTable::default_table();
  Rng rng(77);
  const Topology topo = generate_topology(3, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  const auto cfg = concurrent_cfg(TxStrategy::Beamnull, RxStrategy::Mmse,
                                  true);
  const SchemeResult full = run_concurrent(cfg, cs, topo, params, table);

  Topology sub_topo = topo;
  sub_topo.links.resize(2);
  sub_topo.access_order = {0, 1};
  const ChannelSet sub_cs = subset_channels(cs, 2);
  const SchemeResult sub = run_concurrent(cfg, sub_cs, sub_topo, params, table);
  for (int q = 0; q < 2; ++q)
    for (int i = 0; i < params.n_subcarriers; ++i)
      CHECK(full.beams.tx_vectors[q][i] == sub.beams.tx_vectors[q][i]);
}

TEST_CASE("non-concurrent MAC spreads power over strong equal eigenmodes") {
  SimParams params;
  params.n_subcarriers = 4;
  std::vector<Eigen::MatrixXcd> h(4, 10.0 * Eigen::MatrixXcd::Identity(4, 4));
  const ChannelSet cs = make_channel_set(std::move(h), 1.0);
  const Topology topo = make_topology(1);
  const SchemeResult r = run_nonconcurrent(noncon_cfg(), cs, topo, params,
                                           McsTable::default_table());
  // four equal high-SNR streams all at the top MCS beat any smaller split
  CHECK(r.sum_throughput_mbps == doctest::Approx(4 * 80.0));
  CHECK(r.per_link[0].viable);
  CHECK(r.per_link[0].chosen_mcs == 7);
}

TEST_CASE("non-concurrent MAC keeps one stream on a rank-1 channel") {
  SimParams params;
  params.n_subcarriers = 4;
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(4);
  u(0) = 1.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = 1.0;
  std::vector<Eigen::MatrixXcd> h(4, 10.0 * (u * v.adjoint()));
  const ChannelSet cs = make_channel_set(std::move(h), 1.0);
  const Topology topo = make_topology(1);
  const SchemeResult r = run_nonconcurrent(noncon_cfg(), cs, topo, params,
                                           McsTable::default_table());
  CHECK(r.sum_throughput_mbps == doctest::Approx(80.0));
  CHECK(r.per_link[0].chosen_mcs == 7);
}

TEST_CASE("non-concurrent network throughput is the per-link mean") {
  SimParams params;
  const McsTable table = McsTable::default_table();
  Rng rng(55);
  const Topology topo = generate_topology(3, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  const SchemeResult full =
      run_nonconcurrent(noncon_cfg(), cs, topo, params, table);
  double sum = 0.0;
  for (int q = 0; q < 3; ++q) {
    std::vector<Eigen::MatrixXcd> h;
    for (int i = 0; i < params.n_subcarriers; ++i)
      h.push_back(cs.channel(q, q, i));
    const ChannelSet single = make_channel_set(std::move(h), cs.gain(q, q));
    const SchemeResult alone = run_nonconcurrent(noncon_cfg(), single,
                                                 make_topology(1), params,
                                                 table);
    CHECK(alone.sum_throughput_mbps ==
          doctest::Approx(full.per_link[q].throughput_mbps));
    sum += alone.sum_throughput_mbps;
  }
  CHECK(full.sum_throughput_mbps == doctest::Approx(sum / 3.0));
}

TEST_CASE("scheme dispatch rejects mismatched kinds") {
  SimParams params;
  Rng rng(9);
  const Topology topo = generate_topology(1, params, rng);
  const ChannelSet cs = generate_channels(topo, params, 0.0, rng);
  const McsTable table = McsTable::default_table();
  CHECK_THROWS_AS(run_concurrent(noncon_cfg(), cs, topo, params, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      run_nonconcurrent(concurrent_cfg(TxStrategy::Beamnull, RxStrategy::Zf,
                                       false),
                        cs, topo, params, table),
      std::invalid_argument);
}

TEST_CASE("identical inputs give identical scheme results") {
  SimParams params;
  const McsTable table = McsTable::default_table();
  const double sc2 = 0.1 * params.noise_var_mw;
  for (auto cfg : table2_configs(params)) {
    Rng rng_a(31), rng_b(31);
    const Topology ta = generate_topology(3, params, rng_a);
    const Topology tb = generate_topology(3, params, rng_b);
    const ChannelSet ca = generate_channels(ta, params, sc2, rng_a);
    const ChannelSet cb = generate_channels(tb, params, sc2, rng_b);
    const SchemeResult a = run_scheme(cfg, ca, ta, params, table);
    const SchemeResult b = run_scheme(cfg, cb, tb, params, table);
    CHECK(a.sum_throughput_mbps == b.sum_throughput_mbps);
    for (int q = 0; q < 3; ++q)
      CHECK(a.per_link[q].throughput_mbps == b.per_link[q].throughput_mbps);
  }
}

TEST_CASE("the four compared schemes carry the documented settings") {
  SimParams params;
  const auto configs = table2_configs(params);
  REQUIRE(configs.size() == 4);

  CHECK(configs[0].name == "baseline");
  CHECK(configs[0].kind == SchemeKind::Concurrent);
  CHECK(configs[0].tx_strategy == TxStrategy::Beamnull);
  CHECK(configs[0].rx_strategy == RxStrategy::Zf);
  CHECK_FALSE(configs[0].adaptive_mcs);
  CHECK(configs[0].fixed_mcs == 0);

  CHECK(configs[1].name == "enhanced-mmse");
  CHECK(configs[1].tx_strategy == TxStrategy::Beamform);
  CHECK(configs[1].rx_strategy == RxStrategy::Mmse);
  CHECK(configs[1].adaptive_mcs);

  CHECK(configs[2].name == "enhanced-ummse");
  CHECK(configs[2].tx_strategy == TxStrategy::Beamform);
  CHECK(configs[2].rx_strategy == RxStrategy::UniversalMmse);
  CHECK(configs[2].adaptive_mcs);

  CHECK(configs[3].name == "nonconcurrent");
  CHECK(configs[3].kind == SchemeKind::NonConcurrent);
  CHECK(configs[3].adaptive_mcs);

  for (const auto& cfg : configs)
    CHECK(cfg.est_noise_var ==
          doctest::Approx(0.1 * params.noise_var_mw).epsilon(1e-12));
}
