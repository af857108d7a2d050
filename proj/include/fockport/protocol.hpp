// protocol.hpp
// Two-mode teleportation protocol: measurement basis on modes 2-3,
// per-outcome post states, Bob's number-conserving correction, and the
// outcome-averaged channel.

#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fockport/fock.hpp"

namespace fockport {

struct OutcomeLabel {
  int l;
  int lambda;

  friend auto operator<=>(const OutcomeLabel&, const OutcomeLabel&) = default;
};

// Number of Fock labels in the measurement sector l; equals the count of
// phases lambda available for that sector.
inline int cardinality(int l, int N, int nu) {
  if (l < -N || l > nu)
    throw std::domain_error("cardinality: l outside [-N, nu]");
  return std::min(N, nu - l) - std::max(0, -l) + 1;
}

inline int window_lo(int l) { return std::max(0, -l); }
inline int window_hi(int l, int N, int nu) { return std::min(N, nu - l); }

// Complete orthonormal measurement basis on the pair (mode 2, mode 3).
// The vector for outcome (l,lambda) has amplitude exp(2 pi i lambda k / C_l)
// / sqrt(C_l) on the pair (k2 = N-k, k3 = k+l), k in the sector window.
class MeasurementBasis {
 public:
  MeasurementBasis(int N, int nu) : n_in_(N), n_res_(nu) {
    if (N < 0 || nu < 0)
      throw std::invalid_argument("MeasurementBasis: negative particle count");
    const int dim = (N + 1) * (nu + 1);
    for (int l = -N; l <= nu; ++l) {
      const int card = cardinality(l, N, nu);
      for (int lambda = 0; lambda < card; ++lambda) {
        Vector v = Vector::Zero(dim);
        for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k) {
          const double phase =
              2.0 * std::numbers::pi * lambda * k / static_cast<double>(card);
          v(pair_index(N - k, k + l)) =
              std::polar(1.0 / std::sqrt(static_cast<double>(card)), phase);
        }
        outcomes_.push_back({l, lambda});
        vectors_.emplace(OutcomeLabel{l, lambda}, std::move(v));
      }
    }
  }

  int n_in() const { return n_in_; }
  int n_res() const { return n_res_; }
  int pair_index(int k2, int k3) const { return k2 * (n_res_ + 1) + k3; }

  const std::vector<OutcomeLabel>& outcomes() const { return outcomes_; }
  const Vector& vector(const OutcomeLabel& o) const {
    return vectors_.at(o);
  }

 private:
  int n_in_, n_res_;
  std::vector<OutcomeLabel> outcomes_;
  std::map<OutcomeLabel, Vector> vectors_;
};

inline MeasurementBasis build_measurement_basis(int N, int nu) {
  return MeasurementBasis(N, nu);
}

struct MeasurementResult {
  double probability = 0.0;
  // Absent when the outcome has (numerically) zero probability.
  std::optional<TwoModeDensity> post_state;
};

// Outcome probability and the conditional state of modes 1 and 4.
// With the correction applied the state carries N particles and is indexed
// by the mode-1 occupation; without it the total is nu - l.
inline MeasurementResult apply_measurement(const PureNumberState& initial,
                                           const ResourceState& resource,
                                           const OutcomeLabel& outcome,
                                           bool apply_correction = true) {
  const int N = initial.n_particles();
  const int nu = resource.n_particles();
  const int l = outcome.l;
  const int card = cardinality(l, N, nu);
  if (outcome.lambda < 0 || outcome.lambda >= card)
    throw std::domain_error("apply_measurement: lambda outside [0, C_l)");

  const int lo = window_lo(l);
  const int hi = window_hi(l, N, nu);
  double p = 0.0;
  for (int k = lo; k <= hi; ++k)
    p += resource(k + l, k + l).real() * std::norm(initial.coeff(k));
  p /= card;

  if (p < 1e-15) return MeasurementResult{p, std::nullopt};

  // Bob's correction maps the mode-4 occupation nu-k-l to N-k and cancels
  // the measurement phases; the conditional state is lambda-independent.
  const int total = apply_correction ? N : nu - l;
  Matrix m = Matrix::Zero(total + 1, total + 1);
  for (int k = lo; k <= hi; ++k)
    for (int j = lo; j <= hi; ++j)
      m(k, j) = resource(k + l, j + l) * initial.coeff(k) *
                std::conj(initial.coeff(j)) / (card * p);
  return MeasurementResult{p, TwoModeDensity(total, std::move(m), true)};
}

// Bob's correction V_4^{(l,lambda)} as an explicit matrix over mode-4
// occupations 0..max(N,nu). An isometry on span{|nu-k-l>}.
inline Matrix bob_correction(int l, int lambda, int N, int nu) {
  const int card = cardinality(l, N, nu);
  if (lambda < 0 || lambda >= card)
    throw std::domain_error("bob_correction: lambda outside [0, C_l)");
  const int d = std::max(N, nu) + 1;
  Matrix v = Matrix::Zero(d, d);
  for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k) {
    const double phase =
        2.0 * std::numbers::pi * lambda * k / static_cast<double>(card);
    v(N - k, nu - k - l) = std::polar(1.0, phase);
  }
  return v;
}

// Five-mode dilation of Bob's correction: a unitary on modes 4 and 5 that
// commutes with the total particle number and reproduces V_4 rho V_4^dag
// after tracing out the ancilla. The ancilla starts in |kappa_l> with
// kappa_l = max(0, l-(nu-N)) so every occupation stays nonnegative.
// Returns true when unitarity, number conservation, and the traced-out
// action all hold within `tol`. `test_state` is a mode-4 density over
// occupations 0..max(N,nu), supported on span{|nu-k-l>}.
inline bool dilated_correction_check(int l, int lambda, int N, int nu,
                                     const Matrix& test_state,
                                     double tol = 1e-10) {
  const int card = cardinality(l, N, nu);
  const int kappa = std::max(0, l - (nu - N));
  const int d4 = std::max(N, nu) + 1;
  const int d5 = std::max(kappa, kappa + nu - N - l) + 1;
  if (test_state.rows() != d4 || test_state.cols() != d4)
    throw std::invalid_argument(
        "dilated_correction_check: test_state must be d4 x d4");

  const auto idx = [d5](int o4, int o5) { return o4 * d5 + o5; };
  Matrix big = Matrix::Identity(d4 * d5, d4 * d5);
  std::vector<bool> used(d4 * d5, false);
  const auto claim = [&](int i) {
    if (used[i])
      throw std::logic_error(
          "dilated_correction_check: overlapping block supports");
    used[i] = true;
  };

  for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k) {
    const cplx phase = std::polar(
        1.0, 2.0 * std::numbers::pi * lambda * k / static_cast<double>(card));
    if (l == nu - N) {
      const int i = idx(N - k, kappa);
      claim(i);
      big(i, i) = phase;
    } else {
      const int src = idx(nu - k - l, kappa);
      const int dst = idx(N - k, kappa + nu - N - l);
      claim(src);
      claim(dst);
      big(src, src) = 0.0;
      big(dst, dst) = 0.0;
      big(dst, src) = phase;
      big(src, dst) = std::conj(phase);
    }
  }

  // Unitarity on the full two-mode space.
  const double unit_dev =
      (big.adjoint() * big - Matrix::Identity(d4 * d5, d4 * d5))
          .cwiseAbs()
          .maxCoeff();
  if (unit_dev > tol) return false;

  // Commutation with the total number operator of modes 4 and 5.
  Matrix number = Matrix::Zero(d4 * d5, d4 * d5);
  for (int o4 = 0; o4 < d4; ++o4)
    for (int o5 = 0; o5 < d5; ++o5)
      number(idx(o4, o5), idx(o4, o5)) = static_cast<double>(o4 + o5);
  const double comm_dev =
      (big * number - number * big).cwiseAbs().maxCoeff();
  if (comm_dev > tol) return false;

  // tr_5( V~ (rho (x) |kappa><kappa|) V~^dag ) == V rho V^dag.
  Matrix embedded = Matrix::Zero(d4 * d5, d4 * d5);
  for (int a = 0; a < d4; ++a)
    for (int b = 0; b < d4; ++b)
      embedded(idx(a, kappa), idx(b, kappa)) = test_state(a, b);
  const Matrix evolved = big * embedded * big.adjoint();
  Matrix traced = Matrix::Zero(d4, d4);
  for (int a = 0; a < d4; ++a)
    for (int b = 0; b < d4; ++b)
      for (int o5 = 0; o5 < d5; ++o5)
        traced(a, b) += evolved(idx(a, o5), idx(b, o5));

  const Matrix v = bob_correction(l, lambda, N, nu);
  const double action_dev =
      (traced - v * test_state * v.adjoint()).cwiseAbs().maxCoeff();
  return action_dev <= tol;
}

// Outcome-averaged teleportation channel T[|psi><psi|]. Summation order is
// fixed (ascending l, then k, j) so results do not depend on scheduling.
inline TwoModeDensity averaged_channel(const PureNumberState& initial,
                                       const ResourceState& resource) {
  const int N = initial.n_particles();
  const int nu = resource.n_particles();
  Matrix m = Matrix::Zero(N + 1, N + 1);
  for (int l = -N; l <= nu; ++l)
    for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k)
      for (int j = window_lo(l); j <= window_hi(l, N, nu); ++j)
        m(k, j) += initial.coeff(k) * std::conj(initial.coeff(j)) *
                   resource(k + l, j + l);
  return TwoModeDensity(N, std::move(m), true);
}

}  // namespace fockport
