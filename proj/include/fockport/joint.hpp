// joint.hpp
// Explicit four-mode joint states for the brute-force protocol oracle.

#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fockport/fock.hpp"

namespace fockport {

// Basis of four-mode occupation tuples (k1,k2,k3,k4) with
// k1+k2+k3+k4 = N+nu, k1,k2 <= N and k3,k4 <= nu. This covers every
// configuration reachable from |psi_12><psi_12| (x) rho_34 under
// number-conserving operations on modes 2 and 3.
class FourModeBasis {
 public:
  FourModeBasis(int n_in, int n_res) : n_in_(n_in), n_res_(n_res) {
    if (n_in_ < 0 || n_res_ < 0)
      throw std::invalid_argument("FourModeBasis: negative particle number");
    const int total = n_in_ + n_res_;
    lookup_.assign((n_in_ + 1) * (n_in_ + 1) * (n_res_ + 1) * (n_res_ + 1),
                   -1);
    for (int k1 = 0; k1 <= n_in_; ++k1)
      for (int k2 = 0; k2 <= n_in_; ++k2)
        for (int k3 = 0; k3 <= n_res_; ++k3) {
          const int k4 = total - k1 - k2 - k3;
          if (k4 < 0 || k4 > n_res_) continue;
          lookup_[flat(k1, k2, k3, k4)] = static_cast<int>(states_.size());
          states_.push_back({k1, k2, k3, k4});
        }
  }

  int n_in() const { return n_in_; }
  int n_res() const { return n_res_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::array<int, 4>& state(int i) const { return states_[i]; }

  // -1 when the tuple is outside the basis.
  int index(int k1, int k2, int k3, int k4) const {
    if (k1 < 0 || k1 > n_in_ || k2 < 0 || k2 > n_in_ || k3 < 0 ||
        k3 > n_res_ || k4 < 0 || k4 > n_res_)
      return -1;
    return lookup_[flat(k1, k2, k3, k4)];
  }

 private:
  int flat(int k1, int k2, int k3, int k4) const {
    return ((k1 * (n_in_ + 1) + k2) * (n_res_ + 1) + k3) * (n_res_ + 1) + k4;
  }

  int n_in_, n_res_;
  std::vector<std::array<int, 4>> states_;
  std::vector<int> lookup_;
};

// Density operator of the four modes on the composite support above.
class JointState {
 public:
  // Product state |psi_12><psi_12| (x) rho_34.
  JointState(const PureNumberState& psi, const ResourceState& rho)
      : basis_(psi.n_particles(), rho.n_particles()),
        m_(Matrix::Zero(basis_.size(), basis_.size())) {
    const int n = psi.n_particles();
    const int nu = rho.n_particles();
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= n; ++j)
        for (int s = 0; s <= nu; ++s)
          for (int t = 0; t <= nu; ++t) {
            const int a = basis_.index(k, n - k, s, nu - s);
            const int b = basis_.index(j, n - j, t, nu - t);
            m_(a, b) = psi.coeff(k) * std::conj(psi.coeff(j)) * rho(s, t);
          }
  }

  JointState(FourModeBasis basis, Matrix matrix)
      : basis_(std::move(basis)), m_(std::move(matrix)) {
    if (m_.rows() != basis_.size())
      throw std::invalid_argument("JointState: matrix/basis size mismatch");
    detail::check_hermitian(m_, "JointState");
    const double tr = m_.trace().real();
    if (tr <= 0.0 || tr > 1.0 + herm_tol)
      throw std::invalid_argument("JointState: trace outside (0,1]");
  }

  const FourModeBasis& basis() const { return basis_; }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  FourModeBasis basis_;
  Matrix m_;
};

// Reduced state of modes 1 and 4 after tracing out modes 2 and 3.
// Indexed by the pair (k1, k4), k1 in [0,N], k4 in [0, max(N,nu)]; the
// total k1+k4 is not fixed for a general joint state, and the mode-4
// range leaves room for Bob's correction (occupations up to N).
struct ModePairDensity {
  int n_in;
  int d4;  // mode-4 occupation range is [0, d4)
  Matrix matrix;

  int index(int k1, int k4) const { return k1 * d4 + k4; }
  double trace() const { return matrix.trace().real(); }
};

inline ModePairDensity partial_trace_23(const JointState& joint) {
  const FourModeBasis& b = joint.basis();
  const int n = b.n_in();
  const int d4 = std::max(n, b.n_res()) + 1;
  const int d = (n + 1) * d4;
  Matrix out = Matrix::Zero(d, d);
  for (int a = 0; a < b.size(); ++a) {
    const auto& sa = b.state(a);
    for (int c = 0; c < b.size(); ++c) {
      const auto& sc = b.state(c);
      if (sa[1] != sc[1] || sa[2] != sc[2]) continue;
      out(sa[0] * d4 + sa[3], sc[0] * d4 + sc[3]) += joint.matrix()(a, c);
    }
  }
  return ModePairDensity{n, d4, std::move(out)};
}

// Extract the fixed-total block k1 + k4 = total of a mode-(1,4) pair state
// as a TwoModeDensity indexed by k1. Weight outside the block must vanish.
inline TwoModeDensity fixed_total_block(const ModePairDensity& pair, int total,
                                        bool normalized, double tol = 1e-10) {
  Matrix block = Matrix::Zero(total + 1, total + 1);
  double leaked = 0.0;
  const int d = static_cast<int>(pair.matrix.rows());
  for (int i = 0; i < d; ++i) {
    const int k1 = i / pair.d4;
    const int k4 = i % pair.d4;
    if (k1 + k4 != total || k1 > total) {
      leaked += std::abs(pair.matrix(i, i));
      continue;
    }
    for (int j = 0; j < d; ++j) {
      const int j1 = j / pair.d4;
      const int j4 = j % pair.d4;
      if (j1 + j4 != total || j1 > total) continue;
      block(k1, j1) = pair.matrix(i, j);
    }
  }
  if (leaked > tol)
    throw std::invalid_argument(
        "fixed_total_block: weight outside the requested block");
  return TwoModeDensity(total, std::move(block), normalized);
}

}  // namespace fockport
