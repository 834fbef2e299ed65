#ifndef SDMA_LINK_METRICS_HPP
#define SDMA_LINK_METRICS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdma/sim_params.hpp"

namespace sdma {

/// Fitted dispersion weight of the effective-SNR compression.
inline constexpr double kEffSnrAlpha = 0.125;

struct McsEntry {
  int index = 0;
  int bits_per_symbol = 0;
  double code_rate = 0.0;
  double threshold_db = 0.0;  // minimum effective PPSNR for 10% PER
};

/// The eight-entry modulation and coding table (BPSK 1/2 ... 64QAM 5/6).
/// Alternative tables can be loaded from a text file; see parse().
class McsTable {
 public:
  static McsTable default_table();

  /// Parses lines of "index qam_bits code_rate threshold_db". '#' starts
  /// a comment; code_rate accepts "a/b" or a decimal. Thresholds must be
  /// strictly increasing. Throws std::runtime_error naming the bad line.
  static McsTable parse(std::istream& in, const std::string& source_name);
  static McsTable load(const std::string& path);

  const McsEntry& at(int index) const { return entries_.at(index); }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<McsEntry>& entries() const { return entries_; }

 private:
  explicit McsTable(std::vector<McsEntry> entries);
  std::vector<McsEntry> entries_;
};

struct LinkOutcome {
  std::optional<int> chosen_mcs;
  bool viable = false;
  double throughput_mbps = 0.0;
};

/// Post-processing SINR |w^H h|^2 / (sum |w^H h_q|^2 + noise_var).
double ppsnr(const Eigen::VectorXcd& w_r, const Eigen::VectorXcd& h_desired,
             const std::vector<Eigen::VectorXcd>& interferers,
             double noise_var);

/// Linear-to-dB with a floor that keeps fully nulled subcarriers finite.
double to_db(double linear);

/// Effective PPSNR: subcarrier mean minus alpha times the population
/// variance (both in dB), minus the backoff margin.
double effective_ppsnr(const std::vector<double>& per_subcarrier_db,
                       double alpha, double backoff_db);

/// Highest MCS whose threshold the effective PPSNR meets; nullopt when
/// even the lowest entry is out of reach.
std::optional<int> select_mcs(double effective_db, const McsTable& table);

/// Data rate bits_per_symbol * code_rate * W / (1 + guard), in Mbps.
double mcs_rate_mbps(const McsEntry& mcs, const SimParams& params);

/// Viability ruling: the MCS picked from the (possibly optimistic)
/// estimate must be supported by the true effective PPSNR.
LinkOutcome judge_link(std::optional<int> selected_mcs,
                       double true_effective_db, const McsTable& table,
                       const SimParams& params);

}  // namespace sdma

#endif  // SDMA_LINK_METRICS_HPP
