#include "sdma/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdma {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw std::runtime_error(where + ": " + msg);
}

double to_double(const std::string& v, const std::string& where,
                 const std::string& field) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(where, "field '" + field + "': not a number: '" + v + "'");
  }
}

long to_long(const std::string& v, const std::string& where,
             const std::string& field) {
  try {
    std::size_t pos = 0;
    const long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    fail(where, "field '" + field + "': not an integer: '" + v + "'");
  }
}

std::vector<int> parse_k_list(const std::string& v, const std::string& where) {
  std::vector<int> ks;
  const auto colon = v.find(':');
  if (colon != std::string::npos) {
    const long lo = to_long(trim(v.substr(0, colon)), where, "k");
    const long hi = to_long(trim(v.substr(colon + 1)), where, "k");
    if (lo < 1 || hi < lo) fail(where, "field 'k': bad range '" + v + "'");
    for (long k = lo; k <= hi; ++k) ks.push_back(static_cast<int>(k));
    return ks;
  }
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const long k = to_long(trim(item), where, "k");
    if (k < 1) fail(where, "field 'k': link counts must be >= 1");
    ks.push_back(static_cast<int>(k));
  }
  if (ks.empty()) fail(where, "field 'k': empty list");
  return ks;
}

SchemeConfig parse_scheme(const std::string& value, const std::string& where,
                          const SimParams& params) {
  SchemeConfig cfg;
  cfg.name = "scheme";
  std::istringstream ss(value);
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      fail(where, "scheme token '" + token + "' is not key=value");
    const std::string key = token.substr(0, eq);
    const std::string val = token.substr(eq + 1);
    if (key == "name") {
      cfg.name = val;
    } else if (key == "kind") {
      if (val == "concurrent")
        cfg.kind = SchemeKind::Concurrent;
      else if (val == "nonconcurrent")
        cfg.kind = SchemeKind::NonConcurrent;
      else
        fail(where, "unknown scheme kind '" + val + "'");
    } else if (key == "tx") {
      if (val == "beamnull")
        cfg.tx_strategy = TxStrategy::Beamnull;
      else if (val == "beamform")
        cfg.tx_strategy = TxStrategy::Beamform;
      else
        fail(where, "unknown tx strategy '" + val + "'");
    } else if (key == "rx") {
      if (val == "zf")
        cfg.rx_strategy = RxStrategy::Zf;
      else if (val == "mmse")
        cfg.rx_strategy = RxStrategy::Mmse;
      else if (val == "ummse")
        cfg.rx_strategy = RxStrategy::UniversalMmse;
      else
        fail(where, "unknown rx strategy '" + val + "'");
    } else if (key == "mcs") {
      if (val == "adaptive") {
        cfg.adaptive_mcs = true;
      } else if (val.rfind("fixed", 0) == 0) {
        cfg.adaptive_mcs = false;
        cfg.fixed_mcs = static_cast<int>(
            to_long(val.substr(5), where, "mcs"));
      } else {
        fail(where, "mcs must be 'adaptive' or 'fixedN', got '" + val + "'");
      }
    } else if (key == "est_noise") {
      // multiple of sigma_N^2
      const double factor = to_double(val, where, "est_noise");
      if (factor < 0) fail(where, "est_noise must be >= 0");
      cfg.est_noise_var = factor * params.noise_var_mw;
    } else if (key == "backoff") {
      cfg.backoff_db = to_double(val, where, "backoff");
    } else {
      fail(where, "unknown scheme key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source_name) {
  Scenario scenario;
  scenario.name = "custom";
  scenario.k_values = {1, 2, 3, 4, 5, 6, 7, 8};

  // Scheme est_noise depends on sigma_N^2, so scheme lines are parsed
  // after all parameter lines.
  std::vector<std::pair<std::string, std::string>> scheme_lines;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "missing key before '='");

    if (key == "name") {
      scenario.name = value;
    } else if (key == "seed") {
      scenario.base_seed = static_cast<std::uint64_t>(
          to_long(value, where, "seed"));
    } else if (key == "topologies") {
      const long n = to_long(value, where, "topologies");
      if (n < 1) fail(where, "topologies must be >= 1");
      scenario.n_topologies = static_cast<int>(n);
    } else if (key == "k") {
      scenario.k_values = parse_k_list(value, where);
    } else if (key == "n_antennas") {
      scenario.params.n_antennas =
          static_cast<int>(to_long(value, where, key));
    } else if (key == "n_subcarriers") {
      scenario.params.n_subcarriers =
          static_cast<int>(to_long(value, where, key));
    } else if (key == "bandwidth_mhz") {
      scenario.params.bandwidth_hz = 1e6 * to_double(value, where, key);
    } else if (key == "guard_fraction") {
      scenario.params.guard_fraction = to_double(value, where, key);
    } else if (key == "tx_power_dbm") {
      scenario.params.tx_power_mw = dbm_to_mw(to_double(value, where, key));
    } else if (key == "noise_dbm") {
      scenario.params.noise_var_mw = dbm_to_mw(to_double(value, where, key));
    } else if (key == "pathloss_exponent") {
      scenario.params.pathloss_exponent = to_double(value, where, key);
    } else if (key == "ref_distance_m") {
      scenario.params.ref_distance_m = to_double(value, where, key);
    } else if (key == "wavelength_m") {
      scenario.params.wavelength_m = to_double(value, where, key);
    } else if (key == "area_m") {
      const auto x = value.find('x');
      if (x == std::string::npos) {
        scenario.params.area_x_m = scenario.params.area_y_m =
            to_double(value, where, key);
      } else {
        scenario.params.area_x_m =
            to_double(trim(value.substr(0, x)), where, key);
        scenario.params.area_y_m =
            to_double(trim(value.substr(x + 1)), where, key);
      }
    } else if (key == "mcs_table") {
      scenario.mcs_table = McsTable::load(value);
    } else if (key == "scheme") {
      scheme_lines.emplace_back(where, value);
    } else {
      fail(where, "unknown key '" + key + "'");
    }
  }

  try {
    scenario.params.validate();
  } catch (const std::invalid_argument& e) {
    fail(source_name, e.what());
  }
  for (const auto& [where, value] : scheme_lines)
    scenario.schemes.push_back(parse_scheme(value, where, scenario.params));
  return scenario;
}

Scenario load_custom_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in, path);
}

}  // namespace sdma
