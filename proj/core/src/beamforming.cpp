#include "sdma/beamforming.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace sdma {

namespace {

void require_unit(const Eigen::VectorXcd& w, const char* what) {
  if (std::abs(w.norm() - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(what) + ": vector is not unit norm");
}

Eigen::VectorXcd basis_vector(int n, int index) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(index) = 1.0;
  return e;
}

Eigen::MatrixXcd interference_gram(
    const std::vector<Eigen::VectorXcd>& intf_columns, int n_antennas) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_antennas, n_antennas);
  for (const auto& c : intf_columns) a.noalias() += c * c.adjoint();
  return a;
}

}  // namespace

Eigen::VectorXcd normalize_phase(Eigen::VectorXcd v) {
  Eigen::Index imax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (best == 0.0) return v;
  const std::complex<double> phase = v(imax) / best;
  v *= std::conj(phase);
  return v;
}

Eigen::VectorXcd effective_channel(const Eigen::MatrixXcd& h, double gain,
                                   const SimParams& params,
                                   const Eigen::VectorXcd& w_t) {
  require_unit(w_t, "effective_channel");
  const double scale = std::sqrt(params.tx_power_mw * gain / params.n_subcarriers);
  return scale * (h * w_t);
}

Eigen::VectorXcd intf_column(const Eigen::MatrixXcd& h, double gain,
                             const SimParams& params,
                             const Eigen::VectorXcd& w_r) {
  require_unit(w_r, "intf_column");
  const double scale = std::sqrt(params.tx_power_mw * gain / params.n_subcarriers);
  // {scale * w_r^H h}^H = scale * h^H w_r
  return scale * (h.adjoint() * w_r);
}

Eigen::VectorXcd tx_beamnull(const std::vector<Eigen::VectorXcd>& intf_columns,
                             int n_antennas) {
  if (intf_columns.empty()) return basis_vector(n_antennas, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      interference_gram(intf_columns, n_antennas));
  // Eigen sorts ascending: column 0 carries the least interference energy.
  Eigen::VectorXcd w = normalize_phase(es.eigenvectors().col(0));
  return w / w.norm();
}

CandidateBasis candidate_basis(const std::vector<Eigen::VectorXcd>& intf_columns,
                               int n_antennas) {
  const int n_intf = static_cast<int>(intf_columns.size());
  if (n_intf >= n_antennas)
    throw std::invalid_argument(
        "candidate_basis: only supported for fewer interferers than antennas");
  CandidateBasis basis;
  if (n_intf == 0) {
    basis.columns = Eigen::MatrixXcd::Identity(n_antennas, n_antennas);
    basis.eigen_values = Eigen::VectorXd::Zero(n_antennas);
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      interference_gram(intf_columns, n_antennas));
  const int n_keep = n_antennas - n_intf;
  basis.columns.resize(n_antennas, n_keep);
  basis.eigen_values.resize(n_keep);
  // Keep the n_keep least-interference eigenvectors, reordered so the
  // eigenvalues are non-increasing (last column = beamnulling choice).
  for (int j = 0; j < n_keep; ++j) {
    const int src = n_keep - 1 - j;
    basis.columns.col(j) = normalize_phase(es.eigenvectors().col(src));
    basis.eigen_values(j) = es.eigenvalues()(src);
  }
  return basis;
}

Eigen::VectorXcd tx_beamform(const CandidateBasis& basis,
                             const Eigen::MatrixXcd& h_desired, double gain,
                             const SimParams& params,
                             const Eigen::MatrixXcd& c_mmse) {
  if (basis.columns.cols() == 0)
    throw std::invalid_argument("tx_beamform: empty candidate basis");
  const double herm_err = (c_mmse - c_mmse.adjoint()).norm();
  if (!(herm_err <= 1e-9 * std::max(1.0, c_mmse.norm())))
    throw std::invalid_argument("tx_beamform: c_mmse is not Hermitian");
  Eigen::LLT<Eigen::MatrixXcd> llt(c_mmse);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("tx_beamform: c_mmse is not positive-definite");

  const double scale2 = params.tx_power_mw * gain / params.n_subcarriers;
  const Eigen::MatrixXcd hu = h_desired * basis.columns;
  Eigen::MatrixXcd m = scale2 * (hu.adjoint() * llt.solve(hu));
  m = 0.5 * (m + m.adjoint());  // symmetrize roundoff
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXcd combo =
      normalize_phase(es.eigenvectors().col(m.cols() - 1));
  Eigen::VectorXcd w = basis.columns * combo;
  return w / w.norm();
}

double beamform_objective(const CandidateBasis& basis,
                          const Eigen::MatrixXcd& h_desired, double gain,
                          const SimParams& params,
                          const Eigen::MatrixXcd& c_mmse,
                          const Eigen::VectorXcd& combo) {
  Eigen::LLT<Eigen::MatrixXcd> llt(c_mmse);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("beamform_objective: c_mmse is not positive-definite");
  const double scale2 = params.tx_power_mw * gain / params.n_subcarriers;
  const Eigen::VectorXcd v = h_desired * (basis.columns * combo);
  return scale2 * v.dot(llt.solve(v)).real();
}

Eigen::VectorXcd rx_zf(const Eigen::MatrixXcd& b) {
  if (b.norm() == 0.0)
    throw std::invalid_argument("rx_zf: degenerate all-zero input");
  const Eigen::MatrixXcd gram = b.adjoint() * b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(gram);
  const Eigen::MatrixXcd pinv = cod.pseudoInverse();
  Eigen::VectorXcd w = b * pinv.col(0);
  const double n = w.norm();
  if (n == 0.0) throw std::invalid_argument("rx_zf: degenerate input");
  return w / n;
}

Eigen::VectorXcd rx_mmse(const Eigen::VectorXcd& h_desired,
                         const std::vector<Eigen::VectorXcd>& interferers,
                         double noise_var) {
  if (!(noise_var > 0))
    throw std::invalid_argument("rx_mmse: noise_var must be > 0");
  const Eigen::Index n = h_desired.size();
  Eigen::MatrixXcd c =
      noise_var * Eigen::MatrixXcd::Identity(n, n);
  for (const auto& h : interferers) c.noalias() += h * h.adjoint();
  Eigen::VectorXcd w = c.llt().solve(h_desired);
  const double norm = w.norm();
  if (norm == 0.0) throw std::invalid_argument("rx_mmse: zero desired channel");
  return w / norm;
}

Eigen::VectorXcd rx_ummse(const Eigen::VectorXcd& h_desired,
                          const std::vector<Eigen::VectorXcd>& all_other,
                          double noise_var) {
  // Same estimator; the caller supplies the covariance over every other
  // concurrent link instead of just the earlier accessors.
  return rx_mmse(h_desired, all_other, noise_var);
}

StreamVectors svd_link_vectors(const Eigen::MatrixXcd& h, double gain,
                               const SimParams& params, int n_streams) {
  if (n_streams < 1 || n_streams > h.rows())
    throw std::invalid_argument("svd_link_vectors: stream count out of range");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  StreamVectors sv;
  sv.tx_matrix.resize(h.rows(), n_streams);
  sv.rx_matrix.resize(h.rows(), n_streams);
  sv.singular_values.resize(n_streams);
  for (int s = 0; s < n_streams; ++s) {
    Eigen::VectorXcd v = svd.matrixV().col(s);
    Eigen::VectorXcd u = svd.matrixU().col(s);
    // Joint phase rotation keeps u sigma v^H intact.
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (std::abs(v(imax)) > 0) {
      const std::complex<double> phase = v(imax) / std::abs(v(imax));
      v *= std::conj(phase);
      u *= std::conj(phase);
    }
    sv.tx_matrix.col(s) = v;
    sv.rx_matrix.col(s) = u;
    sv.singular_values(s) = svd.singularValues()(s);
  }
  sv.stream_amplitude = std::sqrt(params.tx_power_mw * gain /
                                  (params.n_subcarriers * n_streams));
  return sv;
}

}  // namespace sdma
