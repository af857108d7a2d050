// multimode.hpp
// Haar-averaged fidelity when Alice's input lives in m modes (plus the
// extra mode shared with the resource), and the product-resource lower
// bound for teleporting such inputs with m independent pair resources.

#pragma once

#include "fockport/fock.hpp"
#include "fockport/protocol.hpp"

namespace fockport {

// Dimension of the k-particle sector of m bosonic modes: C(k+m-1, k).
inline double block_dimension(int k, int m) {
  if (k < 0 || m < 1)
    throw std::invalid_argument("block_dimension: need k >= 0, m >= 1");
  return static_cast<double>(binomial_exact(k + m - 1, k));
}

// Haar-averaged fidelity of teleporting an N-particle state of m input
// modes through a single two-mode resource. m = 1 reduces to the
// two-mode closed form.
inline double fidelity_multimode(const ResourceState& resource, int N, int m) {
  if (N < 0 || m < 1)
    throw std::invalid_argument("fidelity_multimode: need N >= 0, m >= 1");
  const int nu = resource.n_particles();
  const double dim = static_cast<double>(binomial_exact(N + m, N));
  cplx cross = 0.0;
  double diag = 0.0;
  for (int l = -N; l <= nu; ++l) {
    const int lo = window_lo(l);
    const int hi = window_hi(l, N, nu);
    for (int k = lo; k <= hi; ++k) {
      diag += block_dimension(k, m) * resource(k + l, k + l).real();
      for (int j = lo; j <= hi; ++j)
        cross += block_dimension(k, m) * block_dimension(j, m) *
                 resource(k + l, j + l);
    }
  }
  if (std::abs(cross.imag()) > herm_tol)
    throw std::runtime_error(
        "fidelity_multimode: imaginary residue exceeds tolerance");
  return (cross.real() + diag) / (dim * (dim + 1.0));
}

// Probability that m independent maximally entangled pair resources all
// land in perfect-teleportation sectors; lower-bounds the success of the
// (m+1)-mode scheme built from them.
inline double product_resource_lower_bound(int N, int nu, int m) {
  if (nu < N)
    throw std::domain_error("product_resource_lower_bound: nu < N");
  if (m < 1)
    throw std::domain_error("product_resource_lower_bound: m < 1");
  return std::pow((nu - N + 1.0) / (nu + 1.0), m);
}

}  // namespace fockport
