#ifndef SDMA_RANDOM_HPP
#define SDMA_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace sdma {

/// Seeded random source. All variates are generated through explicit
/// bit-to-double mappings so that a given seed reproduces the same
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian();

  /// Circularly symmetric complex Gaussian, zero mean, unit total variance.
  std::complex<double> cgaussian() {
    constexpr double half = 0.70710678118654752440;
    const double re = gaussian();
    const double im = gaussian();
    return {half * re, half * im};
  }

  Eigen::VectorXcd cgaussian_vector(Eigen::Index n);
  Eigen::MatrixXcd cgaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive decorrelated child seeds.
std::uint64_t mix_seed(std::uint64_t a);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace sdma

#endif  // SDMA_RANDOM_HPP
