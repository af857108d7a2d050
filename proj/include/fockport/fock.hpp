// fock.hpp
// Number-conserving two-mode Fock-space primitives: state containers,
// log-space combinatorics, negativity of fixed-number two-mode states.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fockport {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double herm_tol = 1e-12;
inline constexpr double psd_tol = 1e-10;

// ln C(n,k) via log-gamma; avoids overflow for mode numbers in the hundreds.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n)
    throw std::domain_error("log_binomial: require 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

// Exact integer binomial for small arguments (occupation counting).
inline unsigned long long binomial_exact(int n, int k) {
  if (k < 0 || k > n)
    throw std::domain_error("binomial_exact: require 0 <= k <= n");
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Fock label of an M-mode configuration with fixed total occupation.
struct FockLabel {
  std::vector<int> occupations;
  int total = 0;

  FockLabel(std::vector<int> occ, int tot)
      : occupations(std::move(occ)), total(tot) {
    int sum = 0;
    for (int k : occupations) {
      if (k < 0) throw std::invalid_argument("FockLabel: negative occupation");
      sum += k;
    }
    if (sum != total)
      throw std::invalid_argument("FockLabel: occupations do not sum to total");
  }
};

// Pure state of N particles in two modes, c_k = amplitude of k particles
// in the first mode of the pair.
class PureNumberState {
 public:
  PureNumberState(int n_particles, Vector coeffs)
      : n_(n_particles), c_(std::move(coeffs)) {
    if (n_ < 0) throw std::invalid_argument("PureNumberState: N < 0");
    if (c_.size() != n_ + 1)
      throw std::invalid_argument("PureNumberState: need N+1 coefficients");
    if (std::abs(c_.squaredNorm() - 1.0) > herm_tol)
      throw std::invalid_argument("PureNumberState: not normalized");
  }

  int n_particles() const { return n_; }
  const Vector& coeffs() const { return c_; }
  cplx coeff(int k) const { return c_(k); }

 private:
  int n_;
  Vector c_;
};

namespace detail {

inline void check_hermitian(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix not square");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > herm_tol)
    throw std::invalid_argument(std::string(who) + ": not Hermitian (dev " +
                                std::to_string(dev) + ")");
}

inline void check_psd(const Matrix& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -psd_tol)
    throw std::invalid_argument(std::string(who) +
                                ": not positive semidefinite (min eig " +
                                std::to_string(min_eig) + ")");
}

}  // namespace detail

// Shared resource state rho_34 of nu particles in two modes, indexed by
// the occupation of the first mode of the pair.
class ResourceState {
 public:
  ResourceState(int n_particles, Matrix matrix)
      : nu_(n_particles), m_(std::move(matrix)) {
    if (nu_ < 0) throw std::invalid_argument("ResourceState: nu < 0");
    if (m_.rows() != nu_ + 1)
      throw std::invalid_argument("ResourceState: dimension must be nu+1");
    detail::check_hermitian(m_, "ResourceState");
    if (std::abs(m_.trace().real() - 1.0) > herm_tol ||
        std::abs(m_.trace().imag()) > herm_tol)
      throw std::invalid_argument("ResourceState: trace != 1");
    detail::check_psd(m_, "ResourceState");
  }

  int n_particles() const { return nu_; }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int k, int j) const { return m_(k, j); }

 private:
  int nu_;
  Matrix m_;
};

// Mixed two-mode state with a fixed total particle number. Trace may be
// any value in (0,1] when the state is an unnormalized post-measurement
// branch; the `normalized` flag records which convention holds.
class TwoModeDensity {
 public:
  TwoModeDensity(int n_particles, Matrix matrix, bool normalized = true)
      : n_(n_particles), m_(std::move(matrix)), normalized_(normalized) {
    if (n_ < 0) throw std::invalid_argument("TwoModeDensity: N < 0");
    if (m_.rows() != n_ + 1)
      throw std::invalid_argument("TwoModeDensity: dimension must be N+1");
    detail::check_hermitian(m_, "TwoModeDensity");
    const cplx tr = m_.trace();
    if (std::abs(tr.imag()) > herm_tol)
      throw std::invalid_argument("TwoModeDensity: complex trace");
    if (normalized_) {
      if (std::abs(tr.real() - 1.0) > herm_tol)
        throw std::invalid_argument("TwoModeDensity: trace != 1");
    } else if (tr.real() <= 0.0 || tr.real() > 1.0 + herm_tol) {
      throw std::invalid_argument("TwoModeDensity: trace outside (0,1]");
    }
    detail::check_psd(m_, "TwoModeDensity");
  }

  int n_particles() const { return n_; }
  const Matrix& matrix() const { return m_; }
  bool normalized() const { return normalized_; }
  double trace() const { return m_.trace().real(); }
  cplx operator()(int k, int j) const { return m_(k, j); }

 private:
  int n_;
  Matrix m_;
  bool normalized_;
};

// Closed-form negativity of a fixed-number two-mode state:
// half the sum of the off-diagonal moduli.
inline double negativity(const TwoModeDensity& state) {
  const Matrix& m = state.matrix();
  double sum = 0.0;
  for (int k = 0; k < m.rows(); ++k)
    for (int j = 0; j < m.cols(); ++j)
      if (k != j) sum += std::abs(m(k, j));
  return 0.5 * sum;
}

// Negativity from the partial-transpose definition, (tr sqrt((rho^T)^2)-1)/2,
// on the explicit product embedding |k> (x) |total-k|>. Cross-validation
// route for negativity().
inline double negativity_via_partial_transpose(const TwoModeDensity& state) {
  const int total = state.n_particles();
  const int d = total + 1;
  const auto idx = [d](int a, int b) { return a * d + b; };
  Matrix pt = Matrix::Zero(d * d, d * d);
  for (int k = 0; k <= total; ++k)
    for (int j = 0; j <= total; ++j)
      pt(idx(k, total - j), idx(j, total - k)) = state(k, j);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  return 0.5 * (es.eigenvalues().cwiseAbs().sum() - 1.0);
}

}  // namespace fockport
