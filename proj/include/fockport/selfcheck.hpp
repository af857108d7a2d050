// selfcheck.hpp
// End-to-end validation suite shared by the CLI `validate` subcommand and
// the acceptance runner: one CheckResult per top-level criterion.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "fockport/multimode.hpp"
#include "fockport/oracle.hpp"
#include "fockport/sweep.hpp"

namespace fockport {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

inline Vector random_unit_vector(SampleRng& rng, int dim) {
  Vector v(dim);
  for (int k = 0; k < dim; ++k)
    v(k) = cplx(rng.next_gaussian(), rng.next_gaussian());
  v /= v.norm();
  return v;
}

inline ResourceState random_resource(SampleRng& rng, int nu) {
  Matrix g(nu + 1, nu + 1);
  for (int a = 0; a <= nu; ++a)
    for (int b = 0; b <= nu; ++b)
      g(a, b) = cplx(rng.next_gaussian(), rng.next_gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return ResourceState(nu, std::move(rho));
}

inline std::vector<double> random_weights(SampleRng& rng, int nu) {
  std::vector<double> w(nu + 1);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.next_uniform();
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace detail

// --- individual criteria ---------------------------------------------------

inline CheckResult check_separable_baseline(std::uint64_t seed) {
  CheckResult r{1, "separable baseline f = 2/(N+2), E = 0", true, ""};
  detail::SampleRng rng(seed, 101);
  double worst = 0.0;
  for (int t = 0; t < 20 && r.passed; ++t) {
    const int N = 1 + static_cast<int>(rng.next_u64() % 10);
    const int nu = static_cast<int>(rng.next_u64() % 21);
    const ResourceState res = build_resource(
        ResourceSpec::separable(nu, detail::random_weights(rng, nu)));
    const double f = fidelity_closed_form(res, N);
    const double e = avg_final_entanglement(res, N);
    worst = std::max(worst, std::abs(f - 2.0 / (N + 2)));
    if (std::abs(f - 2.0 / (N + 2)) > 1e-12 || e != 0.0) {
      r.passed = false;
      r.detail = detail::fmt("failed at f dev %.3g, E %.3g", worst, e);
    }
  }
  if (r.passed) r.detail = detail::fmt("max f deviation %.3g, E exactly 0", worst);
  return r;
}

inline CheckResult check_maxent_formulas() {
  CheckResult r{2, "maximally entangled resource closed forms", true, ""};
  double worst = 0.0;
  for (int nu = 1; nu <= 100; ++nu) {
    const ResourceState res = build_resource(ResourceSpec::max_ent(nu));
    for (int N = 1; N <= std::min(10, nu); ++N) {
      const double f_ref = 1.0 - N / (3.0 * (nu + 1));
      const double e_ref =
          std::numbers::pi * N * (3.0 * nu - N + 1) / (24.0 * (nu + 1));
      worst = std::max(worst,
                       std::abs(fidelity_closed_form(res, N) - f_ref));
      worst = std::max(worst,
                       std::abs(avg_final_entanglement(res, N) - e_ref));
    }
  }
  r.passed = worst <= 1e-12;
  r.detail = detail::fmt("max deviation %.3g (tol 1e-12)", worst);
  return r;
}

inline CheckResult check_perfect_probability() {
  CheckResult r{3, "perfect-teleportation probability and repeats", true, ""};
  double worst = 0.0;
  for (int N = 1; N <= 6; ++N)
    for (int nu = N; nu <= 30; ++nu) {
      const ResourceState res = build_resource(ResourceSpec::max_ent(nu));
      const TeleportReport rep = teleport_report(res, N);
      double p_perfect = 0.0;
      for (const OutcomeSummary& o : rep.per_outcome)
        if (std::abs(o.conditional_fidelity - 1.0) <= 1e-9)
          p_perfect += o.probability;
      const double p_ref = (nu - N + 1.0) / (nu + 1.0);
      worst = std::max(worst, std::abs(p_perfect - p_ref));
      for (int reps = 1; reps <= 5; ++reps)
        worst = std::max(
            worst, std::abs(repeated_teleportation_probability(N, nu, reps) -
                            (1.0 - std::pow(1.0 - p_ref, reps))));
    }
  r.passed = worst <= 1e-12;
  r.detail = detail::fmt("max deviation %.3g (tol 1e-12)", worst);
  return r;
}

inline CheckResult check_noon_formulas() {
  CheckResult r{4, "N00N resource closed forms", true, ""};
  double worst = 0.0;
  for (int N = 1; N <= 10; ++N) {
    for (int n = 1; n <= N + 4; ++n) {
      const ResourceState res = build_resource(ResourceSpec::noon(n));
      const auto perf = analytic_performance(ResourceSpec::noon(n), N);
      worst = std::max(worst, std::abs(fidelity_closed_form(res, N) -
                                       perf->fidelity));
      worst = std::max(worst, std::abs(avg_final_entanglement(res, N) -
                                       perf->entanglement));
      if (n > N) {
        worst = std::max(worst, std::abs(perf->fidelity - 2.0 / (N + 2)));
        worst = std::max(worst, std::abs(perf->entanglement));
      }
    }
  }
  r.passed = worst <= 1e-12;
  r.detail = detail::fmt("max deviation %.3g (tol 1e-12)", worst);
  return r;
}

inline CheckResult check_oracle_equivalence(std::uint64_t seed) {
  CheckResult r{5, "analytic protocol matches joint-state oracle", true, ""};
  detail::SampleRng rng(seed, 505);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int N = 1 + static_cast<int>(rng.next_u64() % 6);
    const int nu = static_cast<int>(rng.next_u64() % 7);
    const PureNumberState psi(N, detail::random_unit_vector(rng, N + 1));
    const ResourceState res = detail::random_resource(rng, nu);
    const OracleReport oracle = oracle_full_protocol(psi, res);
    for (const OracleOutcome& o : oracle.per_outcome) {
      const MeasurementResult a = apply_measurement(psi, res, o.label);
      worst = std::max(worst, std::abs(a.probability - o.probability));
      if (a.post_state && o.state)
        worst = std::max(
            worst, (a.post_state->matrix() - o.state->matrix())
                       .cwiseAbs()
                       .maxCoeff());
      else if (a.post_state.has_value() != o.state.has_value())
        worst = std::max(worst, 1.0);
    }
    worst = std::max(
        worst, (averaged_channel(psi, res).matrix() - oracle.averaged.matrix())
                   .cwiseAbs()
                   .maxCoeff());
  }
  r.passed = worst <= 1e-10;
  r.detail = detail::fmt("max deviation %.3g (tol 1e-10)", worst);
  return r;
}

inline CheckResult check_monte_carlo(long samples, std::uint64_t seed) {
  CheckResult r{6, "Monte Carlo agrees with closed forms (3 sigma)", true, ""};
  if (samples <= 0) {
    r.detail = "skipped: Monte Carlo disabled (samples = 0)";
    return r;
  }
  const int N = 4, nu = 8;
  const std::vector<ResourceSpec> catalog = {
      ResourceSpec::separable(nu, std::vector<double>(nu + 1, 1.0 / (nu + 1))),
      ResourceSpec::max_ent(nu),
      ResourceSpec::noon(3),
      ResourceSpec::noon(nu),
      ResourceSpec::su2(nu, 0.5, 0.7),
      ResourceSpec::bose_hubbard(nu, -0.5),
      ResourceSpec::gaussian_single(nu, -0.5),
      ResourceSpec::gaussian_double(nu, -2.0),
  };
  double worst_pull = 0.0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const ResourceState res = build_resource(catalog[i]);
    const double f_ref = fidelity_closed_form(res, N);
    const double e_ref = avg_final_entanglement(res, N);
    const MonteCarloEstimate f =
        fidelity_monte_carlo(res, N, samples, seed + 7 * i);
    const MonteCarloEstimate e =
        avg_entanglement_monte_carlo(res, N, samples, seed + 7 * i + 1);
    const double pull_f =
        std::abs(f.estimate - f_ref) / std::max(f.std_error, 1e-13);
    const double pull_e =
        std::abs(e.estimate - e_ref) / std::max(e.std_error, 1e-13);
    worst_pull = std::max({worst_pull, pull_f, pull_e});
  }
  // Haar mean of the input-state negativity: pi N / 8.
  const MonteCarloEstimate neg = detail::monte_carlo_mean(
      samples, seed + 99, N, [&](const PureNumberState& psi) {
        double acc = 0.0;
        for (int k = 0; k <= N; ++k)
          for (int j = 0; j <= N; ++j)
            if (k != j)
              acc += 0.5 * std::abs(psi.coeff(k)) * std::abs(psi.coeff(j));
        return acc;
      });
  worst_pull = std::max(worst_pull, std::abs(neg.estimate -
                                             std::numbers::pi * N / 8.0) /
                                        neg.std_error);
  r.passed = worst_pull <= 3.0;
  r.detail = detail::fmt("max |pull| %.3g (limit 3)", worst_pull);
  return r;
}

inline CheckResult check_coherent_vs_baselines() {
  CheckResult r{7, "symmetric coherent resource beats baselines", true, ""};
  for (int nu = 1; nu <= 100 && r.passed; ++nu) {
    const ResourceState coh = build_resource(ResourceSpec::su2(nu, 0.5, 0.0));
    const ResourceState anti =
        build_resource(ResourceSpec::su2(nu, 0.5, std::numbers::pi));
    for (int N : {1, 5, 10}) {
      if (fidelity_closed_form(coh, N) <= 2.0 / (N + 2) ||
          avg_final_entanglement(coh, N) <= 0.0) {
        r.passed = false;
        r.detail = detail::fmt("coherent not above baseline at nu=%g N=%g",
                               nu, N);
      }
    }
    for (int N = 1; N <= 10; ++N) {
      if (fidelity_closed_form(anti, N) >= 2.0 / (N + 2)) {
        r.passed = false;
        r.detail = detail::fmt("theta=pi not below baseline at nu=%g N=%g",
                               nu, N);
      }
    }
    if (nu == 100) {
      for (int N : {1, 2, 3}) {
        const ResourceState me = build_resource(ResourceSpec::max_ent(nu));
        if (fidelity_closed_form(coh, N) <= fidelity_closed_form(me, N)) {
          r.passed = false;
          r.detail = detail::fmt("coherent below max-ent at N=%g", N, 0);
        }
      }
    }
  }
  if (r.passed) r.detail = "all orderings hold on the N,nu grid";
  return r;
}

inline CheckResult check_coherent_landscape() {
  CheckResult r{8, "coherent-state landscape extrema", true, ""};
  const int N = 10, nu = 100;
  double best_f = -1.0;
  int best_f_xs = -1, best_f_ts = -1;
  double e_theta_dev = 0.0;
  std::vector<double> e_at_theta0(21, 0.0);
  double best_e = -1.0;
  int best_e_xs = -1;
  for (int xs = 0; xs <= 20; ++xs) {
    for (int ts = 0; ts <= 15; ++ts) {
      const double xi = xs / 20.0;
      const double theta = ts * std::numbers::pi / 8.0;
      const ResourceState res =
          build_resource(ResourceSpec::su2(nu, xi, theta));
      const double f = fidelity_closed_form(res, N);
      const double e = avg_final_entanglement(res, N);
      if (f > best_f) {
        best_f = f;
        best_f_xs = xs;
        best_f_ts = ts;
      }
      if (ts == 0) {
        e_at_theta0[xs] = e;
        if (e > best_e) {
          best_e = e;
          best_e_xs = xs;
        }
      } else {
        e_theta_dev = std::max(e_theta_dev, std::abs(e - e_at_theta0[xs]));
      }
    }
  }
  const bool f_at_peak = best_f_xs == 10 && best_f_ts == 0;
  const bool e_at_half = best_e_xs == 10;
  const bool e_const = e_theta_dev <= 1e-14;
  r.passed = f_at_peak && e_at_half && e_const;
  r.detail = detail::fmt("f peak at (xi=%.2f, theta=%.3f), ",
                         best_f_xs / 20.0, best_f_ts * std::numbers::pi / 8) +
             detail::fmt("E theta-deviation %.3g (tol 1e-14), peak xi=%.2f",
                         e_theta_dev, best_e_xs / 20.0);
  return r;
}

inline CheckResult check_bose_hubbard() {
  CheckResult r{9, "Bose-Hubbard ground state and approximants", true, ""};
  double worst_overlap = 1.0;
  for (int nu = 1; nu <= 60; ++nu) {
    const Vector g = bose_hubbard_ground_state(nu, 0.0).coeffs();
    Vector coh(nu + 1);
    for (int k = 0; k <= nu; ++k)
      coh(k) = std::exp(0.5 * (log_binomial(nu, k) - nu * std::numbers::ln2));
    worst_overlap = std::min(worst_overlap, std::abs((coh.adjoint() * g)(0)));
  }
  if (worst_overlap <= 1.0 - 1e-10) {
    r.passed = false;
    r.detail = detail::fmt("gamma=0 coherent overlap %.12g", worst_overlap);
    return r;
  }
  const Vector exact_s = bose_hubbard_ground_state(100, -0.5).coeffs();
  const Vector exact_d = bose_hubbard_ground_state(100, -2.0).coeffs();
  const double ov_s =
      std::abs((gaussian_single(100, -0.5).coeffs().adjoint() * exact_s)(0));
  const double ov_d =
      std::abs((gaussian_double(100, -2.0).coeffs().adjoint() * exact_d)(0));
  if (ov_s <= 0.99 || ov_d <= 0.99) {
    r.passed = false;
    r.detail = detail::fmt("Gaussian overlaps %.6g / %.6g", ov_s, ov_d);
    return r;
  }
  for (int nu = 1; nu <= 100; ++nu) {
    const ResourceState res =
        build_resource(ResourceSpec::bose_hubbard(nu, -0.5));
    for (int N : {1, 6, 10})
      if (fidelity_closed_form(res, N) <= 2.0 / (N + 2)) {
        r.passed = false;
        r.detail = detail::fmt("f(bh) below baseline at nu=%g N=%g", nu, N);
        return r;
      }
  }
  r.detail = detail::fmt("coherent overlap %.12g, Gaussian overlaps %.4g+",
                         worst_overlap, std::min(ov_s, ov_d));
  return r;
}

inline CheckResult check_multimode(std::uint64_t seed) {
  CheckResult r{10, "multimode fidelity reduction and monotonicity", true, ""};
  detail::SampleRng rng(seed, 1010);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int N = 1 + static_cast<int>(rng.next_u64() % 6);
    const int nu = static_cast<int>(rng.next_u64() % 7);
    const ResourceState res = detail::random_resource(rng, nu);
    worst = std::max(worst, std::abs(fidelity_multimode(res, N, 1) -
                                     fidelity_closed_form(res, N)));
  }
  if (worst > 1e-12) {
    r.passed = false;
    r.detail = detail::fmt("m=1 reduction deviation %.3g", worst);
    return r;
  }
  const int N = 10;
  for (int nu : {10, 100}) {
    const ResourceState res = build_resource(ResourceSpec::max_ent(nu));
    const double bound = (nu - N + 1.0) / (nu + 1.0);
    double prev = -1.0;
    for (int m = 1; m <= 8; ++m) {
      const double f = fidelity_multimode(res, N, m);
      if (f <= prev || f < bound || (m == 1 && f <= bound)) {
        r.passed = false;
        r.detail = detail::fmt("monotonicity/bound broken at nu=%g m=%g", nu, m);
        return r;
      }
      prev = f;
    }
  }
  r.detail = detail::fmt("m=1 reduction deviation %.3g; f_m monotone", worst);
  return r;
}

inline CheckResult check_impossibility_witnesses() {
  CheckResult r{11, "fidelity witnesses below 1 and triangle bound", true, ""};
  SweepConfig cfg;
  for (const char* k :
       {"separable", "maxent", "noon", "su2:xi=0.5,theta=0",
        "su2:xi=0.5,theta=3.14159265358979324", "bh:gamma=-0.5",
        "bh:gamma=-2", "gauss1:gamma=-0.5", "gauss2:gamma=-2"})
    cfg.kinds.push_back(detail::parse_kind(k));
  cfg.n_values = {1, 5, 10};
  cfg.nu_values = detail::parse_int_range("1:40");
  cfg.samples = 0;
  const std::vector<ResultRow> rows = run_sweep(cfg);
  double max_f = 0.0;
  double worst_slack = 1e300;
  for (const ResultRow& row : rows) {
    max_f = std::max(max_f, row.f_closed);
    worst_slack = std::min(worst_slack,
                           8.0 * row.e_closed / std::numbers::pi -
                               ((row.N + 2) * row.f_closed - 2.0));
  }
  r.passed = max_f < 1.0 - 1e-9 && worst_slack >= -1e-12;
  r.detail = detail::fmt("max f %.12g over %g rows, ", max_f,
                         static_cast<double>(rows.size())) +
             detail::fmt("min triangle slack %.3g", worst_slack);
  return r;
}

inline CheckResult check_protocol_plumbing(std::uint64_t seed) {
  CheckResult r{12, "measurement basis and unitary dilations", true, ""};
  double worst = 0.0;
  for (int N = 0; N <= 10; ++N)
    for (int nu = 0; nu <= 10; ++nu) {
      const MeasurementBasis mb(N, nu);
      const int dim = (N + 1) * (nu + 1);
      int card_sum = 0;
      for (int l = -N; l <= nu; ++l) card_sum += cardinality(l, N, nu);
      if (card_sum != dim) {
        r.passed = false;
        r.detail = detail::fmt("cardinality sum %g != %g",
                               static_cast<double>(card_sum),
                               static_cast<double>(dim));
        return r;
      }
      Matrix v(dim, dim);
      int col = 0;
      for (const OutcomeLabel& o : mb.outcomes()) v.col(col++) = mb.vector(o);
      worst = std::max(worst, (v.adjoint() * v - Matrix::Identity(dim, dim))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  if (worst > 1e-12) {
    r.passed = false;
    r.detail = detail::fmt("Gram deviation %.3g", worst);
    return r;
  }
  detail::SampleRng rng(seed, 1212);
  for (int N = 0; N <= 4; ++N)
    for (int nu = 0; nu <= 4; ++nu)
      for (int l = -N; l <= nu; ++l)
        for (int lambda = 0; lambda < cardinality(l, N, nu); ++lambda) {
          // Random density supported on span{|nu-k-l>}, as the dilation
          // contract requires.
          const int d4 = std::max(N, nu) + 1;
          Matrix rho = Matrix::Zero(d4, d4);
          Vector amp = Vector::Zero(d4);
          for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k)
            amp(nu - k - l) = cplx(rng.next_gaussian(), rng.next_gaussian());
          amp /= amp.norm();
          rho = amp * amp.adjoint();
          if (!dilated_correction_check(l, lambda, N, nu, rho)) {
            r.passed = false;
            r.detail = detail::fmt("correction dilation failed at l=%g N=%g",
                                   l, N);
            return r;
          }
        }
  for (int nu = 1; nu <= 6; ++nu)
    for (int n = 1; n <= std::min(nu, 4); ++n)
      if (!noon_reduction_dilation_check(nu, n)) {
        r.passed = false;
        r.detail = detail::fmt("N00N reduction dilation failed at nu=%g n=%g",
                               nu, n);
        return r;
      }
  r.detail = detail::fmt("Gram deviation %.3g; all dilation checks passed",
                         worst);
  return r;
}

// Full suite; `samples = 0` skips the Monte-Carlo criterion.
inline std::vector<CheckResult> run_selfchecks(long samples,
                                               std::uint64_t seed) {
  return {
      check_separable_baseline(seed),
      check_maxent_formulas(),
      check_perfect_probability(),
      check_noon_formulas(),
      check_oracle_equivalence(seed),
      check_monte_carlo(samples, seed),
      check_coherent_vs_baselines(),
      check_coherent_landscape(),
      check_bose_hubbard(),
      check_multimode(seed),
      check_impossibility_witnesses(),
      check_protocol_plumbing(seed),
  };
}

}  // namespace fockport
