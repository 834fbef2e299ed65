#include "sdma/mac_schemes.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "sdma/beamforming.hpp"

namespace sdma {

namespace {

std::optional<int> pick_mcs(const SchemeConfig& cfg, double est_effective_db,
                            const McsTable& table) {
  if (cfg.adaptive_mcs) return select_mcs(est_effective_db, table);
  return cfg.fixed_mcs;
}

}  // namespace

SchemeResult run_concurrent(const SchemeConfig& cfg, const ChannelSet& channels,
                            const Topology& topology, const SimParams& params,
                            const McsTable& table) {
  if (cfg.kind != SchemeKind::Concurrent)
    throw std::invalid_argument("run_concurrent: scheme is not Concurrent");
  const int k = topology.size();
  const int nc = params.n_subcarriers;
  const int na = params.n_antennas;
  const double sc2 = cfg.est_noise_var;
  const double nv = params.noise_var_mw;
  const auto& order = topology.access_order;
  Rng rng(channels.noise_seed);

  auto grid = [&] {
    return std::vector<std::vector<Eigen::VectorXcd>>(
        k, std::vector<Eigen::VectorXcd>(nc));
  };
  auto tx = grid();
  auto rx = grid();
  // est[q_rx][q_tx][i]: receiver q_rx's estimate of the effective channel
  // from link q_tx, as available when its RX vector was derived.
  std::vector<std::vector<std::vector<Eigen::VectorXcd>>> est(
      k, std::vector<std::vector<Eigen::VectorXcd>>(
             k, std::vector<Eigen::VectorXcd>(nc)));

  // Sequential access: TX nulling against the already-fixed RX vectors,
  // then the access-time RX vector from the links known so far.
  for (int pos = 0; pos < k; ++pos) {
    const int q_new = order[pos];
    for (int i = 0; i < nc; ++i) {
      std::vector<Eigen::VectorXcd> cols;
      cols.reserve(pos);
      for (int p = 0; p < pos; ++p) {
        const int q = order[p];
        cols.push_back(noisy_intf_column(
            intf_column(channels.channel(q, q_new, i), channels.gain(q, q_new),
                        params, rx[q][i]),
            sc2, rng));
      }
      const bool beamform =
          cfg.tx_strategy == TxStrategy::Beamform && pos < na;
      if (beamform) {
        const CandidateBasis basis = candidate_basis(cols, na);
        Eigen::MatrixXcd c =
            nv * Eigen::MatrixXcd::Identity(na, na);
        for (int p = 0; p < pos; ++p) {
          const int q = order[p];
          const Eigen::VectorXcd hq = noisy_effective_channel(
              effective_channel(channels.channel(q_new, q, i),
                                channels.gain(q_new, q), params, tx[q][i]),
              sc2, rng);
          c.noalias() += hq * hq.adjoint();
        }
        Eigen::MatrixXcd h_des = channels.channel(q_new, q_new, i);
        if (sc2 > 0) {
          // Estimation error on the desired full channel, expressed so
          // each sounded direction carries the Eq.-level variance sigma_C^2.
          const double scale = std::sqrt(
              params.tx_power_mw * channels.gain(q_new, q_new) / nc);
          h_des += (std::sqrt(sc2) / scale) * rng.cgaussian_matrix(na, na);
        }
        tx[q_new][i] = tx_beamform(basis, h_des, channels.gain(q_new, q_new),
                                   params, c);
      } else {
        tx[q_new][i] = tx_beamnull(cols, na);
      }

      for (int p = 0; p <= pos; ++p) {
        const int q = order[p];
        est[q_new][q][i] = noisy_effective_channel(
            effective_channel(channels.channel(q_new, q, i),
                              channels.gain(q_new, q), params, tx[q][i]),
            sc2, rng);
      }
      if (cfg.rx_strategy == RxStrategy::Zf) {
        Eigen::MatrixXcd b(na, pos + 1);
        b.col(0) = est[q_new][q_new][i];
        for (int p = pos - 1; p >= 0; --p)
          b.col(pos - p) = est[q_new][order[p]][i];
        rx[q_new][i] = rx_zf(b);
      } else {
        std::vector<Eigen::VectorXcd> interferers;
        interferers.reserve(pos);
        for (int p = 0; p < pos; ++p)
          interferers.push_back(est[q_new][order[p]][i]);
        rx[q_new][i] = rx_mmse(est[q_new][q_new][i], interferers, nv);
      }
    }
  }

  // Universal MMSE: once every TX vector is fixed, each receiver
  // re-estimates all K effective channels and recomputes its RX vector
  // against the full covariance.
  if (cfg.rx_strategy == RxStrategy::UniversalMmse) {
    for (int pos = 0; pos < k; ++pos) {
      const int q_rx = order[pos];
      for (int i = 0; i < nc; ++i) {
        for (int q = 0; q < k; ++q) {
          est[q_rx][q][i] = noisy_effective_channel(
              effective_channel(channels.channel(q_rx, q, i),
                                channels.gain(q_rx, q), params, tx[q][i]),
              sc2, rng);
        }
        std::vector<Eigen::VectorXcd> others;
        others.reserve(k - 1);
        for (int q = 0; q < k; ++q)
          if (q != q_rx) others.push_back(est[q_rx][q][i]);
        rx[q_rx][i] = rx_ummse(est[q_rx][q_rx][i], others, nv);
      }
    }
  }

  // Outcome: true PPSNR against every concurrent link decides viability;
  // the estimated PPSNR (known interferers only) drives MCS selection.
  SchemeResult result;
  result.per_link.resize(k);
  for (int pos = 0; pos < k; ++pos) {
    const int q_rx = order[pos];
    std::vector<double> true_db(nc), est_db(nc);
    for (int i = 0; i < nc; ++i) {
      std::vector<Eigen::VectorXcd> true_intf;
      true_intf.reserve(k - 1);
      Eigen::VectorXcd h_des;
      for (int q = 0; q < k; ++q) {
        Eigen::VectorXcd h =
            effective_channel(channels.channel(q_rx, q, i),
                              channels.gain(q_rx, q), params, tx[q][i]);
        if (q == q_rx)
          h_des = std::move(h);
        else
          true_intf.push_back(std::move(h));
      }
      true_db[i] = to_db(ppsnr(rx[q_rx][i], h_des, true_intf, nv));

      std::vector<Eigen::VectorXcd> known_intf;
      if (cfg.rx_strategy == RxStrategy::UniversalMmse) {
        for (int q = 0; q < k; ++q)
          if (q != q_rx) known_intf.push_back(est[q_rx][q][i]);
      } else {
        for (int p = 0; p < pos; ++p)
          known_intf.push_back(est[q_rx][order[p]][i]);
      }
      est_db[i] =
          to_db(ppsnr(rx[q_rx][i], est[q_rx][q_rx][i], known_intf, nv));
    }
    const double true_eff = effective_ppsnr(true_db, kEffSnrAlpha, 0.0);
    const double est_eff =
        effective_ppsnr(est_db, kEffSnrAlpha, cfg.backoff_db);
    result.per_link[q_rx] =
        judge_link(pick_mcs(cfg, est_eff, table), true_eff, table, params);
  }
  for (const auto& link : result.per_link)
    result.sum_throughput_mbps += link.throughput_mbps;
  result.beams.tx_vectors = std::move(tx);
  result.beams.rx_vectors = std::move(rx);
  return result;
}

SchemeResult run_nonconcurrent(const SchemeConfig& cfg,
                               const ChannelSet& channels,
                               const Topology& topology,
                               const SimParams& params, const McsTable& table) {
  if (cfg.kind != SchemeKind::NonConcurrent)
    throw std::invalid_argument("run_nonconcurrent: scheme is not NonConcurrent");
  const int k = topology.size();
  const int nc = params.n_subcarriers;
  const int na = params.n_antennas;
  const double sc2 = cfg.est_noise_var;
  const double nv = params.noise_var_mw;
  Rng rng(channels.noise_seed);

  SchemeResult result;
  result.per_link.resize(k);
  double total = 0.0;
  for (int q = 0; q < k; ++q) {
    const double gain = channels.gain(q, q);
    const double scale_full =
        std::sqrt(params.tx_power_mw * gain / nc);
    std::vector<Eigen::MatrixXcd> h_noisy(nc);
    for (int i = 0; i < nc; ++i) {
      h_noisy[i] = channels.channel(q, q, i);
      if (sc2 > 0)
        h_noisy[i] += (std::sqrt(sc2) / scale_full) * rng.cgaussian_matrix(na, na);
    }

    double best_est_mbps = -1.0;
    LinkOutcome best_outcome;
    for (int n_streams = 1; n_streams <= na; ++n_streams) {
      std::vector<StreamVectors> sv(nc);
      for (int i = 0; i < nc; ++i)
        sv[i] = svd_link_vectors(h_noisy[i], gain, params, n_streams);

      double est_mbps = 0.0;
      LinkOutcome candidate;
      for (int s = 0; s < n_streams; ++s) {
        std::vector<double> est_db(nc), true_db(nc);
        for (int i = 0; i < nc; ++i) {
          const double amp = sv[i].stream_amplitude;
          // Streams are exactly orthogonal on the estimated channel; the
          // true channel sees inter-stream leakage from the CSI mismatch.
          const Eigen::MatrixXcd y_est = amp * (h_noisy[i] * sv[i].tx_matrix);
          const Eigen::MatrixXcd y_true =
              amp * (channels.channel(q, q, i) * sv[i].tx_matrix);
          const Eigen::VectorXcd u = sv[i].rx_matrix.col(s);
          auto stream_sinr = [&](const Eigen::MatrixXcd& y) {
            double interference = 0.0;
            for (int s2 = 0; s2 < n_streams; ++s2)
              if (s2 != s) interference += std::norm(u.dot(y.col(s2)));
            return std::norm(u.dot(y.col(s))) / (interference + nv);
          };
          est_db[i] = to_db(stream_sinr(y_est));
          true_db[i] = to_db(stream_sinr(y_true));
        }
        const auto selected = pick_mcs(
            cfg, effective_ppsnr(est_db, kEffSnrAlpha, cfg.backoff_db), table);
        if (selected)
          est_mbps += mcs_rate_mbps(table.at(*selected), params);
        const LinkOutcome stream_outcome =
            judge_link(selected, effective_ppsnr(true_db, kEffSnrAlpha, 0.0),
                       table, params);
        if (stream_outcome.viable) {
          candidate.viable = true;
          candidate.throughput_mbps += stream_outcome.throughput_mbps;
        }
        if (selected &&
            (!candidate.chosen_mcs || *selected > *candidate.chosen_mcs))
          candidate.chosen_mcs = selected;
      }
      if (est_mbps > best_est_mbps) {
        best_est_mbps = est_mbps;
        best_outcome = candidate;
      }
    }
    if (!best_outcome.viable) best_outcome.throughput_mbps = 0.0;
    result.per_link[q] = best_outcome;
    total += best_outcome.throughput_mbps;
  }
  // Time sharing: each link gets an equal slice of airtime.
  result.sum_throughput_mbps = total / k;
  return result;
}

SchemeResult run_scheme(const SchemeConfig& cfg, const ChannelSet& channels,
                        const Topology& topology, const SimParams& params,
                        const McsTable& table) {
  return cfg.kind == SchemeKind::Concurrent
             ? run_concurrent(cfg, channels, topology, params, table)
             : run_nonconcurrent(cfg, channels, topology, params, table);
}

std::vector<SchemeConfig> table2_configs(const SimParams& params) {
  const double sigma_c2 = 0.1 * params.noise_var_mw;
  SchemeConfig baseline{"baseline",        SchemeKind::Concurrent,
                        TxStrategy::Beamnull, RxStrategy::Zf,
                        false, 0, sigma_c2, 0.0};
  SchemeConfig enhanced{"enhanced-mmse",   SchemeKind::Concurrent,
                        TxStrategy::Beamform, RxStrategy::Mmse,
                        true, 0, sigma_c2, 0.0};
  SchemeConfig ummse{"enhanced-ummse",     SchemeKind::Concurrent,
                     TxStrategy::Beamform, RxStrategy::UniversalMmse,
                     true, 0, sigma_c2, 0.0};
  SchemeConfig noncon{"nonconcurrent",     SchemeKind::NonConcurrent,
                      TxStrategy::Beamnull, RxStrategy::Zf,
                      true, 0, sigma_c2, 0.0};
  return {baseline, enhanced, ummse, noncon};
}

}  // namespace sdma
