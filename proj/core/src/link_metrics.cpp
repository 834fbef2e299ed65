#include "sdma/link_metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdma {

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::runtime_error("MCS table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index != static_cast<int>(i))
      throw std::runtime_error("MCS indices must be consecutive from 0");
    if (e.bits_per_symbol < 1 || !(e.code_rate > 0 && e.code_rate <= 1))
      throw std::runtime_error("invalid MCS entry " + std::to_string(i));
    if (i > 0 && !(e.threshold_db > entries_[i - 1].threshold_db))
      throw std::runtime_error("MCS thresholds must be strictly increasing");
  }
}

McsTable McsTable::default_table() {
  return McsTable({
      {0, 1, 1.0 / 2.0, 1.4},   // BPSK 1/2
      {1, 2, 1.0 / 2.0, 4.4},   // QPSK 1/2
      {2, 2, 3.0 / 4.0, 6.5},   // QPSK 3/4
      {3, 4, 1.0 / 2.0, 8.6},   // 16QAM 1/2
      {4, 4, 3.0 / 4.0, 12.0},  // 16QAM 3/4
      {5, 6, 2.0 / 3.0, 15.8},  // 64QAM 2/3
      {6, 6, 3.0 / 4.0, 17.2},  // 64QAM 3/4
      {7, 6, 5.0 / 6.0, 18.8},  // 64QAM 5/6
  });
}

namespace {

double parse_rate(const std::string& token, const std::string& where) {
  const auto slash = token.find('/');
  try {
    if (slash == std::string::npos) return std::stod(token);
    const double num = std::stod(token.substr(0, slash));
    const double den = std::stod(token.substr(slash + 1));
    if (den == 0) throw std::runtime_error("zero denominator");
    return num / den;
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": bad code_rate '" + token + "'");
  }
}

}  // namespace

McsTable McsTable::parse(std::istream& in, const std::string& source_name) {
  std::vector<McsEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    McsEntry e;
    std::string rate_token;
    if (!(ls >> e.index)) continue;  // blank or comment-only line
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!(ls >> e.bits_per_symbol >> rate_token >> e.threshold_db))
      throw std::runtime_error(
          where + ": expected 'index qam_bits code_rate threshold_db'");
    e.code_rate = parse_rate(rate_token, where);
    if (e.index != static_cast<int>(entries.size()))
      throw std::runtime_error(where +
                               ": MCS indices must be consecutive from 0");
    if (!entries.empty() && !(e.threshold_db > entries.back().threshold_db))
      throw std::runtime_error(
          where + ": MCS thresholds must be strictly increasing");
    entries.push_back(e);
  }
  try {
    return McsTable(std::move(entries));
  } catch (const std::runtime_error& err) {
    throw std::runtime_error(source_name + ": " + err.what());
  }
}

McsTable McsTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open MCS table file: " + path);
  return parse(in, path);
}

double ppsnr(const Eigen::VectorXcd& w_r, const Eigen::VectorXcd& h_desired,
             const std::vector<Eigen::VectorXcd>& interferers,
             double noise_var) {
  if (!(noise_var > 0))
    throw std::invalid_argument("ppsnr: noise_var must be > 0");
  const double signal = std::norm(w_r.dot(h_desired));
  double denom = noise_var;
  for (const auto& h : interferers) denom += std::norm(w_r.dot(h));
  return signal / denom;
}

double to_db(double linear) {
  return 10.0 * std::log10(std::max(linear, 1e-300));
}

double effective_ppsnr(const std::vector<double>& per_subcarrier_db,
                       double alpha, double backoff_db) {
  if (per_subcarrier_db.empty())
    throw std::invalid_argument("effective_ppsnr: empty subcarrier list");
  const double n = static_cast<double>(per_subcarrier_db.size());
  double mean = 0.0;
  for (double v : per_subcarrier_db) mean += v;
  mean /= n;
  double var = 0.0;  // population variance over subcarriers
  for (double v : per_subcarrier_db) var += (v - mean) * (v - mean);
  var /= n;
  return mean - alpha * var - backoff_db;
}

std::optional<int> select_mcs(double effective_db, const McsTable& table) {
  std::optional<int> best;
  for (const auto& e : table.entries()) {
    if (e.threshold_db <= effective_db) best = e.index;
  }
  return best;
}

double mcs_rate_mbps(const McsEntry& mcs, const SimParams& params) {
  return mcs.bits_per_symbol * mcs.code_rate * params.bandwidth_hz /
         (1.0 + params.guard_fraction) / 1e6;
}

LinkOutcome judge_link(std::optional<int> selected_mcs,
                       double true_effective_db, const McsTable& table,
                       const SimParams& params) {
  LinkOutcome out;
  out.chosen_mcs = selected_mcs;
  if (!selected_mcs) return out;
  const McsEntry& e = table.at(*selected_mcs);
  if (true_effective_db >= e.threshold_db) {
    out.viable = true;
    out.throughput_mbps = mcs_rate_mbps(e, params);
  }
  return out;
}

}  // namespace sdma
