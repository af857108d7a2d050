// resources.hpp
// Catalog of two-mode resource states for the teleportation protocol and
// their analytic performance formulas.

#pragma once

#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fockport/fock.hpp"

namespace fockport {

enum class ResourceKind {
  Separable,
  MaxEnt,
  MaxEntPhased,
  Noon,
  Su2Coherent,
  BoseHubbardExact,
  GaussianSingle,
  GaussianDouble,
};

inline const char* kind_name(ResourceKind k) {
  switch (k) {
    case ResourceKind::Separable: return "separable";
    case ResourceKind::MaxEnt: return "maxent";
    case ResourceKind::MaxEntPhased: return "maxent_phased";
    case ResourceKind::Noon: return "noon";
    case ResourceKind::Su2Coherent: return "su2";
    case ResourceKind::BoseHubbardExact: return "bh";
    case ResourceKind::GaussianSingle: return "gauss1";
    case ResourceKind::GaussianDouble: return "gauss2";
  }
  return "?";
}

enum class RegimeLabel { Perturbative, SingleGaussian, DoubleGaussian, Critical };

inline const char* regime_name(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::Perturbative: return "perturbative";
    case RegimeLabel::SingleGaussian: return "single_gaussian";
    case RegimeLabel::DoubleGaussian: return "double_gaussian";
    case RegimeLabel::Critical: return "critical";
  }
  return "?";
}

struct ResourceSpec {
  ResourceKind kind = ResourceKind::MaxEnt;
  int nu = 1;
  std::vector<double> weights;  // Separable
  std::vector<double> phases;   // MaxEntPhased
  double xi = 0.5;              // Su2Coherent
  double theta = 0.0;           // Su2Coherent
  double gamma = 0.0;           // BH / Gaussian kinds

  static ResourceSpec separable(int nu, std::vector<double> weights) {
    ResourceSpec s;
    s.kind = ResourceKind::Separable;
    s.nu = nu;
    s.weights = std::move(weights);
    return s;
  }
  static ResourceSpec max_ent(int nu) {
    return ResourceSpec{ResourceKind::MaxEnt, nu};
  }
  static ResourceSpec max_ent_phased(int nu, std::vector<double> phases) {
    ResourceSpec s;
    s.kind = ResourceKind::MaxEntPhased;
    s.nu = nu;
    s.phases = std::move(phases);
    return s;
  }
  // N00N state of n particles.
  static ResourceSpec noon(int n) {
    return ResourceSpec{ResourceKind::Noon, n};
  }
  static ResourceSpec su2(int nu, double xi, double theta) {
    ResourceSpec s;
    s.kind = ResourceKind::Su2Coherent;
    s.nu = nu;
    s.xi = xi;
    s.theta = theta;
    return s;
  }
  static ResourceSpec bose_hubbard(int nu, double gamma) {
    ResourceSpec s;
    s.kind = ResourceKind::BoseHubbardExact;
    s.nu = nu;
    s.gamma = gamma;
    return s;
  }
  static ResourceSpec gaussian_single(int nu, double gamma) {
    ResourceSpec s;
    s.kind = ResourceKind::GaussianSingle;
    s.nu = nu;
    s.gamma = gamma;
    return s;
  }
  static ResourceSpec gaussian_double(int nu, double gamma) {
    ResourceSpec s;
    s.kind = ResourceKind::GaussianDouble;
    s.nu = nu;
    s.gamma = gamma;
    return s;
  }

  std::string describe() const {
    std::ostringstream os;
    os << kind_name(kind);
    switch (kind) {
      case ResourceKind::Su2Coherent:
        os << "(xi=" << xi << ",theta=" << theta << ")";
        break;
      case ResourceKind::BoseHubbardExact:
      case ResourceKind::GaussianSingle:
      case ResourceKind::GaussianDouble:
        os << "(gamma=" << gamma << ")";
        break;
      default:
        break;
    }
    return os.str();
  }
};

namespace detail {

inline ResourceState rank_one_resource(int nu, const Vector& g) {
  return ResourceState(nu, g * g.adjoint());
}

}  // namespace detail

// Ground state of the two-mode Bose-Hubbard Hamiltonian with tunneling tau
// and on-site interaction U = gamma * tau / nu, solved on the symmetric
// tridiagonal Fock-basis representation. Sign convention: the central
// coefficient g_{floor(nu/2)} is real positive.
inline PureNumberState bose_hubbard_ground_state(int nu, double gamma,
                                                 double tau = 1.0) {
  if (nu < 1) throw std::invalid_argument("bose_hubbard_ground_state: nu < 1");
  if (tau <= 0.0)
    throw std::invalid_argument("bose_hubbard_ground_state: tau <= 0");
  const double u = gamma * tau / nu;
  const auto diag_at = [&](int k) {
    return u * (static_cast<double>(k) * (k - 1) +
                static_cast<double>(nu - k) * (nu - k - 1));
  };
  const auto off_at = [&](int k) {  // couples k and k+1
    return -tau * std::sqrt(static_cast<double>(k + 1) * (nu - k));
  };
  // The Hamiltonian commutes with the mirror k <-> nu-k, and its ground
  // state is node-free (negative off-diagonals), hence even. Diagonalizing
  // in the even sector keeps the symmetric state even when the attractive
  // regime makes the lowest doublet degenerate to machine precision.
  const int half = nu / 2 + 1;  // even-sector dimension
  Eigen::VectorXd diag(half), sub(half - 1);
  for (int k = 0; k < half; ++k) diag(k) = diag_at(k);
  for (int k = 0; k + 1 < half; ++k) sub(k) = off_at(k);
  if (nu % 2 == 1)
    diag(half - 1) += off_at(half - 1);  // mirror pair (k, k+1) coupling
  else if (half >= 2)
    sub(half - 2) *= std::numbers::sqrt2;  // pair state against the center
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("bose_hubbard_ground_state: eigensolver failed");
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  Eigen::VectorXd g(nu + 1);
  for (int k = 0; k < half; ++k) {
    const bool center = nu % 2 == 0 && k == half - 1;
    const double amp = center ? v(k) : v(k) / std::numbers::sqrt2;
    g(k) = amp;
    g(nu - k) = amp;
  }
  if (g(nu / 2) < 0.0) g = -g;
  g /= g.norm();
  return PureNumberState(nu, g.cast<cplx>());
}

// Single-Gaussian approximation of the Bose-Hubbard ground state,
// g_k ~ exp(-(k - nu/2)^2 / (4 sigma^2)), sigma^2 = nu / (4 sqrt(gamma+1)).
// Normalized by explicit summation.
inline PureNumberState gaussian_single(int nu, double gamma) {
  if (gamma <= -1.0) throw std::domain_error("gaussian_single: gamma <= -1");
  const double sigma2 = nu / (4.0 * std::sqrt(gamma + 1.0));
  Eigen::VectorXd g(nu + 1);
  for (int k = 0; k <= nu; ++k) {
    const double d = k - 0.5 * nu;
    g(k) = std::exp(-d * d / (4.0 * sigma2));
  }
  g /= g.norm();
  return PureNumberState(nu, g.cast<cplx>());
}

// Double-Gaussian approximation, centers nu/2 +- (nu/2) sqrt(1 - 1/gamma^2),
// sigma'^2 = nu / (4 |gamma| sqrt(gamma^2 - 1)).
inline PureNumberState gaussian_double(int nu, double gamma) {
  if (gamma >= -1.0) throw std::domain_error("gaussian_double: gamma >= -1");
  const double split = 0.5 * nu * std::sqrt(1.0 - 1.0 / (gamma * gamma));
  const double sigma2 =
      nu / (4.0 * std::abs(gamma) * std::sqrt(gamma * gamma - 1.0));
  Eigen::VectorXd g(nu + 1);
  for (int k = 0; k <= nu; ++k) {
    const double dp = k - 0.5 * nu - split;
    const double dm = k - 0.5 * nu + split;
    g(k) = std::exp(-dp * dp / (4.0 * sigma2)) +
           std::exp(-dm * dm / (4.0 * sigma2));
  }
  g /= g.norm();
  return PureNumberState(nu, g.cast<cplx>());
}

inline ResourceState build_resource(const ResourceSpec& spec) {
  const int nu = spec.nu;
  if (nu < 0) throw std::invalid_argument("build_resource: nu < 0");
  switch (spec.kind) {
    case ResourceKind::Separable: {
      if (static_cast<int>(spec.weights.size()) != nu + 1)
        throw std::invalid_argument("build_resource: need nu+1 weights");
      double sum = 0.0;
      for (double w : spec.weights) {
        if (w < 0.0)
          throw std::invalid_argument("build_resource: negative weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > herm_tol)
        throw std::invalid_argument("build_resource: weights must sum to 1");
      Matrix m = Matrix::Zero(nu + 1, nu + 1);
      for (int k = 0; k <= nu; ++k) m(k, k) = spec.weights[k];
      return ResourceState(nu, std::move(m));
    }
    case ResourceKind::MaxEnt: {
      Vector g = Vector::Constant(nu + 1, 1.0 / std::sqrt(nu + 1.0));
      return detail::rank_one_resource(nu, g);
    }
    case ResourceKind::MaxEntPhased: {
      if (static_cast<int>(spec.phases.size()) != nu + 1)
        throw std::invalid_argument("build_resource: need nu+1 phases");
      Vector g(nu + 1);
      for (int k = 0; k <= nu; ++k)
        g(k) = std::polar(1.0 / std::sqrt(nu + 1.0), spec.phases[k]);
      return detail::rank_one_resource(nu, g);
    }
    case ResourceKind::Noon: {
      if (nu < 1) throw std::invalid_argument("build_resource: noon needs nu >= 1");
      Vector g = Vector::Zero(nu + 1);
      g(0) = g(nu) = 1.0 / std::numbers::sqrt2;
      return detail::rank_one_resource(nu, g);
    }
    case ResourceKind::Su2Coherent: {
      if (spec.xi < 0.0 || spec.xi > 1.0)
        throw std::invalid_argument("build_resource: xi outside [0,1]");
      Vector g = Vector::Zero(nu + 1);
      for (int k = 0; k <= nu; ++k) {
        if ((spec.xi == 0.0 && k > 0) || (spec.xi == 1.0 && k < nu)) continue;
        double log_amp = 0.5 * log_binomial(nu, k);
        if (k > 0) log_amp += 0.5 * k * std::log(spec.xi);
        if (k < nu) log_amp += 0.5 * (nu - k) * std::log(1.0 - spec.xi);
        g(k) = std::polar(std::exp(log_amp), spec.theta * (0.5 * nu - k));
      }
      return detail::rank_one_resource(nu, g);
    }
    case ResourceKind::BoseHubbardExact:
      return detail::rank_one_resource(
          nu, bose_hubbard_ground_state(nu, spec.gamma).coeffs());
    case ResourceKind::GaussianSingle:
      return detail::rank_one_resource(nu,
                                       gaussian_single(nu, spec.gamma).coeffs());
    case ResourceKind::GaussianDouble:
      return detail::rank_one_resource(nu,
                                       gaussian_double(nu, spec.gamma).coeffs());
  }
  throw std::logic_error("build_resource: unknown kind");
}

// Hard cutoffs standing in for the asymptotic regime boundaries; advisory
// metadata only, never gates a computation.
inline RegimeLabel classify_regime(int nu, double gamma) {
  const double window = std::pow(static_cast<double>(nu), -2.0 / 3.0);
  if (std::abs(gamma + 1.0) <= window) return RegimeLabel::Critical;
  if (gamma > -1.0 + window &&
      gamma <= static_cast<double>(nu) * nu / 10.0)
    return RegimeLabel::SingleGaussian;
  if (gamma < -1.0 - window && gamma >= -10.0 * std::sqrt(nu))
    return RegimeLabel::DoubleGaussian;
  return RegimeLabel::Perturbative;
}

// Probability that at least one of r teleportation runs with the maximally
// entangled resource lands in a perfect-teleportation sector.
inline double repeated_teleportation_probability(int N, int nu, int r) {
  if (nu < N)
    throw std::domain_error("repeated_teleportation_probability: nu < N");
  if (r < 1) throw std::domain_error("repeated_teleportation_probability: r < 1");
  return 1.0 - std::pow(N / (nu + 1.0), r);
}

struct AnalyticPerformance {
  double fidelity = 0.0;
  double entanglement = 0.0;
};

// Closed-form (f, E) pairs for the kinds that admit one.
inline std::optional<AnalyticPerformance> analytic_performance(
    const ResourceSpec& spec, int N) {
  switch (spec.kind) {
    case ResourceKind::Separable:
      return AnalyticPerformance{2.0 / (N + 2), 0.0};
    case ResourceKind::MaxEnt:
      if (spec.nu < N) return std::nullopt;
      return AnalyticPerformance{
          1.0 - N / (3.0 * (spec.nu + 1)),
          std::numbers::pi * N * (3.0 * spec.nu - N + 1) /
              (24.0 * (spec.nu + 1))};
    case ResourceKind::Noon: {
      const int n = spec.nu;
      if (n > N) return AnalyticPerformance{2.0 / (N + 2), 0.0};
      return AnalyticPerformance{
          2.0 / (N + 2) * (1.0 + (N - n + 1) / (2.0 * (N + 1))),
          std::numbers::pi * (N - n + 1) / (8.0 * (N + 1))};
    }
    default:
      return std::nullopt;
  }
}

// Diagonal unitary absorbing the phases of a phased maximally entangled
// state; entry k multiplies the resource coefficient of Fock label k by
// exp(-i theta(k)).
inline Vector phase_absorber(const std::vector<double>& phases) {
  Vector u(static_cast<int>(phases.size()));
  for (int k = 0; k < u.size(); ++k) u(k) = std::polar(1.0, -phases[k]);
  return u;
}

inline ResourceState apply_phase_absorber(const ResourceState& resource,
                                          const std::vector<double>& phases) {
  if (static_cast<int>(phases.size()) != resource.n_particles() + 1)
    throw std::invalid_argument("apply_phase_absorber: need nu+1 phases");
  const Vector u = phase_absorber(phases);
  Matrix m = resource.matrix();
  for (int k = 0; k < m.rows(); ++k)
    for (int j = 0; j < m.cols(); ++j) m(k, j) *= u(k) * std::conj(u(j));
  return ResourceState(resource.n_particles(), std::move(m));
}

// Verifies the particle-loss reduction of a N00N state from nu to n
// particles: W_j = |0><0| + |n><nu| has a number-conserving unitary
// dilation W~_35 whose ancilla trace reproduces W rho W^dag on the
// {|0>, |nu>} support, and (W_3 (x) W_4) |nu00nu> = |n00n>.
inline bool noon_reduction_dilation_check(int nu, int n, double tol = 1e-10) {
  // n = 0 is excluded: |0><0| + |0><nu| maps two orthogonal states to the
  // same one and admits no unitary dilation.
  if (n < 1 || n > nu)
    throw std::domain_error("noon_reduction_dilation_check: need 1 <= n <= nu");
  const int d3 = nu + 1;
  const int d5 = nu - n + 1;
  const auto idx = [d5](int o3, int o5) { return o3 * d5 + o5; };

  Matrix big = Matrix::Identity(d3 * d5, d3 * d5);
  if (n < nu) {
    const int src = idx(nu, 0);
    const int dst = idx(n, nu - n);
    if (src == dst)
      throw std::logic_error("noon_reduction_dilation_check: support overlap");
    big(src, src) = 0.0;
    big(dst, dst) = 0.0;
    big(dst, src) = 1.0;
    big(src, dst) = 1.0;
  }

  const double unit_dev =
      (big.adjoint() * big - Matrix::Identity(d3 * d5, d3 * d5))
          .cwiseAbs()
          .maxCoeff();
  if (unit_dev > tol) return false;

  Matrix number = Matrix::Zero(d3 * d5, d3 * d5);
  for (int o3 = 0; o3 < d3; ++o3)
    for (int o5 = 0; o5 < d5; ++o5)
      number(idx(o3, o5), idx(o3, o5)) = static_cast<double>(o3 + o5);
  if ((big * number - number * big).cwiseAbs().maxCoeff() > tol) return false;

  Matrix w = Matrix::Zero(d3, d3);
  w(0, 0) = 1.0;
  w(n, nu) = 1.0;

  // Ancilla trace against W rho W^dag for states diagonal in {|0>,|nu>}.
  // This is the identity's domain of validity: a 0-nu coherence would move
  // phase information into the ancilla and be lost by the trace. The
  // states it is applied to (reductions of |nu00nu>) are diagonal.
  std::vector<Matrix> test_states;
  {
    Matrix a = Matrix::Zero(d3, d3), b = Matrix::Zero(d3, d3),
           c = Matrix::Zero(d3, d3);
    a(0, 0) = 1.0;
    b(nu, nu) = 1.0;
    c(0, 0) = 0.3;
    c(nu, nu) = 0.7;
    test_states = {a, b, c};
  }
  for (const Matrix& rho : test_states) {
    Matrix embedded = Matrix::Zero(d3 * d5, d3 * d5);
    for (int a = 0; a < d3; ++a)
      for (int b = 0; b < d3; ++b) embedded(idx(a, 0), idx(b, 0)) = rho(a, b);
    const Matrix evolved = big * embedded * big.adjoint();
    Matrix traced = Matrix::Zero(d3, d3);
    for (int a = 0; a < d3; ++a)
      for (int b = 0; b < d3; ++b)
        for (int o5 = 0; o5 < d5; ++o5)
          traced(a, b) += evolved(idx(a, o5), idx(b, o5));
    if ((traced - w * rho * w.adjoint()).cwiseAbs().maxCoeff() > tol)
      return false;
  }

  // (W_3 (x) W_4)|nu00nu> = |n00n> on the two-mode product space.
  Vector noon_nu = Vector::Zero(d3 * d3);
  noon_nu(nu * d3 + 0) = 1.0 / std::numbers::sqrt2;
  noon_nu(0 * d3 + nu) = 1.0 / std::numbers::sqrt2;
  Vector noon_n = Vector::Zero(d3 * d3);
  noon_n(n * d3 + 0) = 1.0 / std::numbers::sqrt2;
  noon_n(0 * d3 + n) = 1.0 / std::numbers::sqrt2;
  Matrix ww = Matrix::Zero(d3 * d3, d3 * d3);
  for (int a = 0; a < d3; ++a)
    for (int b = 0; b < d3; ++b)
      for (int c = 0; c < d3; ++c)
        for (int e = 0; e < d3; ++e)
          if (w(a, b) != cplx{} && w(c, e) != cplx{})
            ww(a * d3 + c, b * d3 + e) = w(a, b) * w(c, e);
  return (ww * noon_nu - noon_n).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace fockport
