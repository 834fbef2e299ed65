#ifndef SDMA_BEAMFORMING_HPP
#define SDMA_BEAMFORMING_HPP

#include <vector>

#include <Eigen/Core>

#include "sdma/sim_params.hpp"

namespace sdma {

/// Orthonormal span of the admissible TX directions for an accessing
/// link: the eigenvectors of H_intf H_intf^H with the smallest
/// interference energy. `eigen_values` holds the matching eigenvalues,
/// non-increasing, so the last column is the beamnulling choice.
struct CandidateBasis {
  Eigen::MatrixXcd columns;      // N_A x (N_A - Q + 1), orthonormal
  Eigen::VectorXd eigen_values;  // same length as columns, non-increasing
};

/// Per-stream SVD beam vectors for the non-concurrent MAC.
struct StreamVectors {
  Eigen::MatrixXcd tx_matrix;        // N_A x S, right singular vectors
  Eigen::MatrixXcd rx_matrix;        // N_A x S, left singular vectors
  Eigen::VectorXd singular_values;   // non-increasing, length S
  double stream_amplitude = 0.0;     // sqrt(P_T * gain / (N_C * S))
};

/// Rotates v by a global phase so its largest-magnitude component is
/// real positive. Determinism convention for eigenvector outputs.
Eigen::VectorXcd normalize_phase(Eigen::VectorXcd v);

/// Effective RX-side channel sqrt(P_T * gain / N_C) * h * w_t.
/// Throws if w_t is not unit norm (tolerance 1e-6).
Eigen::VectorXcd effective_channel(const Eigen::MatrixXcd& h, double gain,
                                   const SimParams& params,
                                   const Eigen::VectorXcd& w_t);

/// TX-side interference column {sqrt(P_T * gain / N_C) * w_r^H * h}^H.
Eigen::VectorXcd intf_column(const Eigen::MatrixXcd& h, double gain,
                             const SimParams& params,
                             const Eigen::VectorXcd& w_r);

/// Least-dominant eigenvector of H_intf H_intf^H; e1 (omni) when there
/// are no interference columns yet.
Eigen::VectorXcd tx_beamnull(const std::vector<Eigen::VectorXcd>& intf_columns,
                             int n_antennas);

/// All admissible TX directions for an accessing link. Requires fewer
/// than n_antennas interference columns; identity basis when empty.
CandidateBasis candidate_basis(const std::vector<Eigen::VectorXcd>& intf_columns,
                               int n_antennas);

/// SINR-optimal unit combination of the candidate directions: takes the
/// dominant eigenvector of (P_T gain / N_C) {h U}^H C^-1 {h U} and maps
/// it back through the basis. c_mmse must be Hermitian positive-definite.
Eigen::VectorXcd tx_beamform(const CandidateBasis& basis,
                             const Eigen::MatrixXcd& h_desired, double gain,
                             const SimParams& params,
                             const Eigen::MatrixXcd& c_mmse);

/// The quadratic objective maximized by tx_beamform, evaluated at a
/// given unit combination vector over the basis.
double beamform_objective(const CandidateBasis& basis,
                          const Eigen::MatrixXcd& h_desired, double gain,
                          const SimParams& params,
                          const Eigen::MatrixXcd& c_mmse,
                          const Eigen::VectorXcd& combo);

/// Zero-forcing RX vector: normalize(B pinv(B^H B) e1). Column 0 of b is
/// the desired effective channel, the rest are interferers.
Eigen::VectorXcd rx_zf(const Eigen::MatrixXcd& b);

/// MMSE RX vector against the listed interferers plus noise.
Eigen::VectorXcd rx_mmse(const Eigen::VectorXcd& h_desired,
                         const std::vector<Eigen::VectorXcd>& interferers,
                         double noise_var);

/// MMSE RX vector with the covariance of every other concurrent link
/// (earlier and later accessors alike).
Eigen::VectorXcd rx_ummse(const Eigen::VectorXcd& h_desired,
                          const std::vector<Eigen::VectorXcd>& all_other,
                          double noise_var);

/// First S singular triplets of h, for the single-link SVD MAC with an
/// equal power split P_T / (N_C * S) per stream.
StreamVectors svd_link_vectors(const Eigen::MatrixXcd& h, double gain,
                               const SimParams& params, int n_streams);

}  // namespace sdma

#endif  // SDMA_BEAMFORMING_HPP
