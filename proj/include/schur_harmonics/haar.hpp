#ifndef SCHUR_HARMONICS_HAAR_HPP
#define SCHUR_HARMONICS_HAAR_HPP

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace schur_harmonics {

// Haar-distributed n x n unitary: QR of a complex Gaussian matrix with the
// phases of diag(R) moved into Q, which makes the law unitarily invariant.
inline Eigen::MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = std::complex<double>(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

// Uniform phase e^{i theta}, the Haar measure on U(1).
inline std::complex<double> haar_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
  return std::polar(1.0, u(rng));
}

} // namespace schur_harmonics

#endif
