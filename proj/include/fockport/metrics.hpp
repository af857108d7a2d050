// metrics.hpp
// Figures of merit for the teleportation protocol: Haar sampling and
// moments, closed-form fidelity and average final entanglement, their
// Monte-Carlo estimators, and the triangle bound relating the two.

#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "fockport/protocol.hpp"

namespace fockport {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: the stream for sample i depends only on
// (seed, i), so serial and parallel evaluation produce identical draws.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t counter)
      : state_(splitmix64(seed ^ splitmix64(counter))) {}

  std::uint64_t next_u64() {
    state_ = splitmix64(state_ + 0x632be59bd9b4e019ull);
    return state_;
  }

  double next_uniform() {  // in (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller; platform-independent unlike std::normal_distribution.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Pairwise (tree) reduction; bounds summation error on long MC runs.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

}  // namespace detail

// Moments of the Haar-induced distribution of the coefficients of an
// (N+1)-dimensional pure state: E |c_k|^alpha.
inline double haar_moment(double alpha, int N) {
  if (alpha <= -2.0) throw std::domain_error("haar_moment: alpha <= -2");
  return std::exp(std::lgamma(1.0 + alpha / 2.0) + std::lgamma(N + 1.0) -
                  std::lgamma(N + 1.0 + alpha / 2.0));
}

// Pair moment E |c_k|^alpha |c_j|^beta for k != j.
inline double haar_moment(double alpha, double beta, int N) {
  if (alpha <= -2.0 || beta <= -2.0)
    throw std::domain_error("haar_moment: exponent <= -2");
  return std::exp(std::lgamma(1.0 + alpha / 2.0) +
                  std::lgamma(1.0 + beta / 2.0) + std::lgamma(N + 1.0) -
                  std::lgamma(N + 1.0 + (alpha + beta) / 2.0));
}

// Haar-distributed pure states of N particles in two modes, produced by
// normalizing independent standard complex Gaussians. Sample i is fully
// determined by (seed, i).
class HaarSampler {
 public:
  HaarSampler(int n_particles, std::uint64_t seed)
      : n_(n_particles), seed_(seed) {
    if (n_ < 0) throw std::invalid_argument("HaarSampler: N < 0");
  }

  int n_particles() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  PureNumberState sample() { return sample_at(counter_++); }

  PureNumberState sample_at(std::uint64_t index) const {
    detail::SampleRng rng(seed_, index);
    Vector c(n_ + 1);
    for (int k = 0; k <= n_; ++k)
      c(k) = cplx(rng.next_gaussian(), rng.next_gaussian());
    c /= c.norm();
    return PureNumberState(n_, std::move(c));
  }

 private:
  int n_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Triangular overlap weight max{0, N+1-|k-j|}; counts how many sectors l
// expose the resource entry (k,j).
inline double sector_weight(int N, int k, int j) {
  return std::max(0, N + 1 - std::abs(k - j));
}

// Haar-averaged teleportation fidelity in closed form.
inline double fidelity_closed_form(const ResourceState& resource, int N) {
  const int nu = resource.n_particles();
  cplx sum = 0.0;
  for (int k = 0; k <= nu; ++k)
    for (int j = 0; j <= nu; ++j)
      if (k != j) sum += sector_weight(N, k, j) * resource(k, j);
  if (std::abs(sum.imag()) > herm_tol)
    throw std::runtime_error(
        "fidelity_closed_form: imaginary residue exceeds tolerance");
  return 2.0 / (N + 2) * (1.0 + sum.real() / (2.0 * (N + 1)));
}

// Double (Haar and outcome) average of the final negativity, closed form.
inline double avg_final_entanglement(const ResourceState& resource, int N) {
  const int nu = resource.n_particles();
  double sum = 0.0;
  for (int k = 0; k <= nu; ++k)
    for (int j = 0; j <= nu; ++j)
      if (k != j) sum += sector_weight(N, k, j) * std::abs(resource(k, j));
  return std::numbers::pi / 8.0 * sum / (N + 1);
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

namespace detail {

template <typename PerSample>
MonteCarloEstimate monte_carlo_mean(long samples, std::uint64_t seed, int N,
                                    PerSample&& value) {
  if (samples < 1)
    throw std::invalid_argument("monte_carlo_mean: samples < 1");
  const HaarSampler sampler(N, seed);
  std::vector<double> vals(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i)
    vals[static_cast<std::size_t>(i)] =
        value(sampler.sample_at(static_cast<std::uint64_t>(i)));
  const double mean = pairwise_sum(vals) / static_cast<double>(samples);
  std::vector<double> sq(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - mean;
    sq[i] = d * d;
  }
  const double var =
      samples > 1 ? pairwise_sum(sq) / static_cast<double>(samples - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace detail

// Monte-Carlo fidelity: mean of <psi| T[|psi><psi|] |psi> over Haar draws.
inline MonteCarloEstimate fidelity_monte_carlo(const ResourceState& resource,
                                               int N, long samples,
                                               std::uint64_t seed) {
  return detail::monte_carlo_mean(
      samples, seed, N, [&](const PureNumberState& psi) {
        const TwoModeDensity out = averaged_channel(psi, resource);
        return (psi.coeffs().adjoint() * out.matrix() * psi.coeffs())(0)
            .real();
      });
}

// Monte-Carlo double average of p * negativity over outcomes and Haar
// draws. The per-outcome negativity does not depend on lambda or on
// whether Bob's correction was applied, so the lambda sum collapses to a
// factor C_l.
inline MonteCarloEstimate avg_entanglement_monte_carlo(
    const ResourceState& resource, int N, long samples, std::uint64_t seed) {
  const int nu = resource.n_particles();
  return detail::monte_carlo_mean(
      samples, seed, N, [&](const PureNumberState& psi) {
        double acc = 0.0;
        for (int l = -N; l <= nu; ++l) {
          const int lo = window_lo(l);
          const int hi = window_hi(l, N, nu);
          for (int k = lo; k <= hi; ++k)
            for (int j = lo; j <= hi; ++j)
              if (k != j)
                acc += 0.5 * std::abs(resource(k + l, j + l)) *
                       std::abs(psi.coeff(k)) * std::abs(psi.coeff(j));
        }
        return acc;
      });
}

// Checks 8E/pi >= (N+2) f - 2 for the closed-form figures of merit.
inline bool triangle_bound_check(const ResourceState& resource, int N,
                                 double slack = 1e-12) {
  const double f = fidelity_closed_form(resource, N);
  const double e = avg_final_entanglement(resource, N);
  return 8.0 * e / std::numbers::pi >= (N + 2) * f - 2.0 - slack;
}

// Per-outcome summary assembled from the Haar-averaged analytic formulas.
struct OutcomeSummary {
  OutcomeLabel label;
  double probability = 0.0;           // Haar average of p_(l,lambda)
  double conditional_fidelity = 0.0;  // Haar average weighted by p
  double conditional_negativity = 0.0;
};

struct TeleportReport {
  double fidelity = 0.0;
  double avg_entanglement = 0.0;
  std::vector<OutcomeSummary> per_outcome;
};

inline TeleportReport teleport_report(const ResourceState& resource, int N) {
  const int nu = resource.n_particles();
  TeleportReport report;
  report.fidelity = fidelity_closed_form(resource, N);
  report.avg_entanglement = avg_final_entanglement(resource, N);
  const double pair_moment = haar_moment(2.0, 2.0, N);
  const double quartic = haar_moment(4.0, N);
  const double abs_pair = haar_moment(1.0, 1.0, N);
  for (int l = -N; l <= nu; ++l) {
    const int card = cardinality(l, N, nu);
    const int lo = window_lo(l);
    const int hi = window_hi(l, N, nu);
    for (int lambda = 0; lambda < card; ++lambda) {
      OutcomeSummary s;
      s.label = {l, lambda};
      double p = 0.0;
      cplx overlap = 0.0;
      double ent = 0.0;
      for (int k = lo; k <= hi; ++k) {
        p += resource(k + l, k + l).real() / (N + 1);
        for (int j = lo; j <= hi; ++j) {
          const double moment = (k == j) ? quartic : pair_moment;
          overlap += resource(k + l, j + l) * moment;
          if (k != j)
            ent += 0.5 * std::abs(resource(k + l, j + l)) * abs_pair;
        }
      }
      p /= card;
      s.probability = p;
      if (p > 1e-15) {
        s.conditional_fidelity = overlap.real() / card / p;
        s.conditional_negativity = ent / card / p;
      }
      report.per_outcome.push_back(s);
    }
  }
  return report;
}

}  // namespace fockport
