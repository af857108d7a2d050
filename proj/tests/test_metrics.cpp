#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "fockport/metrics.hpp"
#include "fockport/resources.hpp"

using namespace fockport;

namespace {

ResourceState random_density(std::mt19937& gen, int nu) {
  std::normal_distribution<double> g;
  Matrix a(nu + 1, nu + 1);
  for (int i = 0; i <= nu; ++i)
    for (int j = 0; j <= nu; ++j) a(i, j) = cplx(g(gen), g(gen));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return ResourceState(nu, std::move(rho));
}

struct SampleStats {
  double mean, stderr_;
};

template <typename F>
SampleStats sample_mean(int n, F&& f) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(i);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= (n - 1);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("haar_moment closed values") {
  for (int N : {1, 3, 7}) {
    REQUIRE_THAT(haar_moment(2.0, N),
                 Catch::Matchers::WithinRel(1.0 / (N + 1), 1e-13));
    REQUIRE_THAT(haar_moment(4.0, N),
                 Catch::Matchers::WithinRel(2.0 / ((N + 1.0) * (N + 2)),
                                            1e-13));
    REQUIRE_THAT(haar_moment(2.0, 2.0, N),
                 Catch::Matchers::WithinRel(1.0 / ((N + 1.0) * (N + 2)),
                                            1e-13));
    REQUIRE_THAT(haar_moment(1.0, 1.0, N),
                 Catch::Matchers::WithinRel(
                     std::numbers::pi / (4.0 * (N + 1)), 1e-13));
    REQUIRE_THAT(haar_moment(0.0, N), Catch::Matchers::WithinRel(1.0, 1e-13));
  }
  REQUIRE_THROWS_AS(haar_moment(-2.0, 3), std::domain_error);
  REQUIRE_THROWS_AS(haar_moment(1.0, -2.5, 3), std::domain_error);
}

TEST_CASE("haar_moment matches sample moments") {
  const int N = 4, n = 20000;
  const HaarSampler sampler(N, 421);
  const auto check = [&](double expected, auto&& value) {
    const SampleStats s =
        sample_mean(n, [&](int i) { return value(sampler.sample_at(i)); });
    REQUIRE(std::abs(s.mean - expected) <= 5.0 * s.stderr_);
  };
  check(haar_moment(2.0, N),
        [](const PureNumberState& p) { return std::norm(p.coeff(0)); });
  check(haar_moment(4.0, N), [](const PureNumberState& p) {
    const double x = std::norm(p.coeff(0));
    return x * x;
  });
  check(haar_moment(2.0, 2.0, N), [](const PureNumberState& p) {
    return std::norm(p.coeff(0)) * std::norm(p.coeff(1));
  });
  check(haar_moment(1.0, 1.0, N), [](const PureNumberState& p) {
    return std::abs(p.coeff(0)) * std::abs(p.coeff(1));
  });
}

TEST_CASE("Haar sampler is deterministic and order-independent") {
  HaarSampler a(3, 99), b(3, 99);
  const PureNumberState s5 = a.sample_at(5);
  for (int i = 0; i < 5; ++i) (void)b.sample();
  const PureNumberState t5 = b.sample();
  REQUIRE((s5.coeffs() - t5.coeffs()).cwiseAbs().maxCoeff() == 0.0);
  HaarSampler c(3, 100);
  REQUIRE((c.sample_at(5).coeffs() - s5.coeffs()).cwiseAbs().maxCoeff() >
          1e-3);
}

TEST_CASE("sector_weight") {
  REQUIRE(sector_weight(3, 0, 0) == 4.0);
  REQUIRE(sector_weight(3, 0, 4) == 0.0);
  REQUIRE(sector_weight(3, 5, 2) == 1.0);
  REQUIRE(sector_weight(2, 1, 4) == 0.0);
}

TEST_CASE("closed forms match a protocol-level Monte-Carlo oracle") {
  // Independent path: average the per-outcome probabilities and states of
  // apply_measurement over sampled inputs, instead of the analytic
  // moment-based expressions.
  std::mt19937 gen(31);
  for (int t = 0; t < 3; ++t) {
    const int N = 2 + t;
    const int nu = 3 + t;
    const ResourceState rho = random_density(gen, nu);
    const double f_closed = fidelity_closed_form(rho, N);
    const double e_closed = avg_final_entanglement(rho, N);
    const HaarSampler sampler(N, 7 + t);
    const int n = 20000;
    const SampleStats f_mc = sample_mean(n, [&](int i) {
      const PureNumberState psi = sampler.sample_at(i);
      double acc = 0.0;
      for (int l = -N; l <= nu; ++l)
        for (int lam = 0; lam < cardinality(l, N, nu); ++lam) {
          const MeasurementResult r = apply_measurement(psi, rho, {l, lam});
          if (r.post_state)
            acc += r.probability *
                   (psi.coeffs().adjoint() * r.post_state->matrix() *
                    psi.coeffs())(0)
                       .real();
        }
      return acc;
    });
    const SampleStats e_mc = sample_mean(n, [&](int i) {
      const PureNumberState psi = sampler.sample_at(i);
      double acc = 0.0;
      for (int l = -N; l <= nu; ++l)
        for (int lam = 0; lam < cardinality(l, N, nu); ++lam) {
          const MeasurementResult r = apply_measurement(psi, rho, {l, lam});
          if (r.post_state) acc += r.probability * negativity(*r.post_state);
        }
      return acc;
    });
    REQUIRE(std::abs(f_mc.mean - f_closed) <= 4.0 * f_mc.stderr_);
    REQUIRE(std::abs(e_mc.mean - e_closed) <= 4.0 * e_mc.stderr_);
  }
}

TEST_CASE("library Monte-Carlo estimators agree with closed forms") {
  std::mt19937 gen(37);
  const ResourceState rho = random_density(gen, 5);
  const int N = 3;
  const MonteCarloEstimate f = fidelity_monte_carlo(rho, N, 20000, 5);
  REQUIRE(std::abs(f.estimate - fidelity_closed_form(rho, N)) <=
          4.0 * f.std_error);
  const MonteCarloEstimate e = avg_entanglement_monte_carlo(rho, N, 20000, 6);
  REQUIRE(std::abs(e.estimate - avg_final_entanglement(rho, N)) <=
          4.0 * e.std_error);
  // Determinism under a fixed seed.
  const MonteCarloEstimate f2 = fidelity_monte_carlo(rho, N, 20000, 5);
  REQUIRE(f.estimate == f2.estimate);
  REQUIRE(f.std_error == f2.std_error);
  REQUIRE_THROWS_AS(fidelity_monte_carlo(rho, N, 0, 5),
                    std::invalid_argument);
}

TEST_CASE("fidelity_closed_form rejects non-Hermitian-looking input sums") {
  // Hermitian resources always pass; the guard is exercised indirectly by
  // verifying a real result for complex off-diagonal resources.
  std::mt19937 gen(41);
  const ResourceState rho = random_density(gen, 4);
  REQUIRE_NOTHROW(fidelity_closed_form(rho, 3));
}

TEST_CASE("triangle bound holds for catalog resources") {
  for (int N : {1, 4, 8}) {
    REQUIRE(triangle_bound_check(build_resource(ResourceSpec::max_ent(10)), N));
    REQUIRE(triangle_bound_check(
        build_resource(ResourceSpec::separable(
            6, std::vector<double>(7, 1.0 / 7))),
        N));
    REQUIRE(triangle_bound_check(build_resource(ResourceSpec::noon(3)), N));
    REQUIRE(triangle_bound_check(
        build_resource(ResourceSpec::su2(8, 0.5, 0.0)), N));
  }
}

TEST_CASE("teleport_report is consistent with its own aggregates") {
  const ResourceState rho = build_resource(ResourceSpec::max_ent(7));
  const int N = 3;
  const TeleportReport rep = teleport_report(rho, N);
  double p_total = 0.0, f_acc = 0.0, e_acc = 0.0;
  for (const OutcomeSummary& o : rep.per_outcome) {
    p_total += o.probability;
    f_acc += o.probability * o.conditional_fidelity;
    e_acc += o.probability * o.conditional_negativity;
  }
  REQUIRE_THAT(p_total, Catch::Matchers::WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(f_acc, Catch::Matchers::WithinAbs(rep.fidelity, 1e-12));
  REQUIRE_THAT(e_acc, Catch::Matchers::WithinAbs(rep.avg_entanglement, 1e-12));
}
