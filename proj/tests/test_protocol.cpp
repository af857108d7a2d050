#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fockport/protocol.hpp"

using namespace fockport;

namespace {

// Independent cardinality oracle: count the admissible summation indices
// directly instead of evaluating the min/max expression.
int counted_cardinality(int l, int N, int nu) {
  int count = 0;
  for (int k = 0; k <= N; ++k)
    if (k + l >= 0 && k + l <= nu) ++count;
  return count;
}

PureNumberState random_pure(std::mt19937& gen, int n) {
  std::normal_distribution<double> g;
  Vector c(n + 1);
  for (int k = 0; k <= n; ++k) c(k) = cplx(g(gen), g(gen));
  c /= c.norm();
  return PureNumberState(n, std::move(c));
}

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

}  // namespace

TEST_CASE("cardinality matches the counting oracle and sums to the dimension") {
  for (int N = 0; N <= 8; ++N)
    for (int nu = 0; nu <= 8; ++nu) {
      int sum = 0;
      for (int l = -N; l <= nu; ++l) {
        REQUIRE(cardinality(l, N, nu) == counted_cardinality(l, N, nu));
        REQUIRE(cardinality(l, N, nu) >= 1);
        sum += cardinality(l, N, nu);
      }
      REQUIRE(sum == (N + 1) * (nu + 1));
    }
  REQUIRE_THROWS_AS(cardinality(-3, 2, 5), std::domain_error);
  REQUIRE_THROWS_AS(cardinality(6, 2, 5), std::domain_error);
}

TEST_CASE("measurement basis is orthonormal and complete") {
  for (auto [N, nu] : {std::pair{1, 1}, {3, 2}, {2, 5}, {4, 4}}) {
    const MeasurementBasis mb(N, nu);
    const int dim = (N + 1) * (nu + 1);
    REQUIRE(static_cast<int>(mb.outcomes().size()) == dim);
    Matrix v(dim, dim);
    int col = 0;
    for (const OutcomeLabel& o : mb.outcomes()) v.col(col++) = mb.vector(o);
    REQUIRE((v.adjoint() * v - Matrix::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff() < 1e-13);
    REQUIRE((v * v.adjoint() - Matrix::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff() < 1e-13);
  }
}

TEST_CASE("outcome labels are unique and ordered by sector") {
  const MeasurementBasis mb(3, 4);
  std::set<OutcomeLabel> seen;
  int last_l = -100;
  for (const OutcomeLabel& o : mb.outcomes()) {
    REQUIRE(seen.insert(o).second);
    REQUIRE(o.l >= last_l);
    last_l = o.l;
    REQUIRE(o.lambda >= 0);
    REQUIRE(o.lambda < cardinality(o.l, 3, 4));
  }
}

TEST_CASE("measurement probabilities sum to one") {
  std::mt19937 gen(11);
  for (int t = 0; t < 20; ++t) {
    const int N = 1 + static_cast<int>(gen() % 5);
    const int nu = static_cast<int>(gen() % 6);
    const PureNumberState psi = random_pure(gen, N);
    const ResourceState rho = random_density(gen, nu);
    double total = 0.0;
    for (int l = -N; l <= nu; ++l)
      for (int lambda = 0; lambda < cardinality(l, N, nu); ++lambda)
        total += apply_measurement(psi, rho, {l, lambda}).probability;
    REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("post-measurement states are lambda-independent and normalized") {
  std::mt19937 gen(13);
  const PureNumberState psi = random_pure(gen, 3);
  const ResourceState rho = random_density(gen, 4);
  for (int l = -3; l <= 4; ++l) {
    std::optional<Matrix> first;
    for (int lambda = 0; lambda < cardinality(l, 3, 4); ++lambda) {
      const MeasurementResult res = apply_measurement(psi, rho, {l, lambda});
      REQUIRE(res.post_state.has_value());
      REQUIRE_THAT(res.post_state->trace(),
                   Catch::Matchers::WithinAbs(1.0, 1e-12));
      if (!first) first = res.post_state->matrix();
      REQUIRE((res.post_state->matrix() - *first).cwiseAbs().maxCoeff() <
              1e-13);
    }
  }
}

TEST_CASE("uncorrected post state carries nu - l particles") {
  std::mt19937 gen(17);
  const PureNumberState psi = random_pure(gen, 2);
  const ResourceState rho = random_density(gen, 5);
  for (int l : {-2, 0, 3}) {
    const MeasurementResult res =
        apply_measurement(psi, rho, {l, 0}, /*apply_correction=*/false);
    REQUIRE(res.post_state.has_value());
    REQUIRE(res.post_state->n_particles() == 5 - l);
  }
}

TEST_CASE("Bob's correction is an isometry on its support") {
  for (auto [N, nu] : {std::pair{2, 4}, {4, 2}, {3, 3}}) {
    for (int l = -N; l <= nu; ++l)
      for (int lambda = 0; lambda < cardinality(l, N, nu); ++lambda) {
        const Matrix v = bob_correction(l, lambda, N, nu);
        // V^dag V is the projector onto span{|nu-k-l>}.
        const Matrix gram = v.adjoint() * v;
        for (int a = 0; a < gram.rows(); ++a)
          for (int b = 0; b < gram.cols(); ++b) {
            const bool in_support =
                a == b && nu - a - l >= window_lo(l) &&
                nu - a - l <= window_hi(l, N, nu);
            REQUIRE(std::abs(gram(a, b) - (in_support ? 1.0 : 0.0)) < 1e-14);
          }
      }
  }
  REQUIRE_THROWS_AS(bob_correction(0, 5, 2, 2), std::domain_error);
}

TEST_CASE("dilated correction reproduces the isometry action") {
  std::mt19937 gen(19);
  std::normal_distribution<double> g;
  for (int N = 0; N <= 4; ++N)
    for (int nu = 0; nu <= 4; ++nu)
      for (int l = -N; l <= nu; ++l)
        for (int lambda = 0; lambda < cardinality(l, N, nu); ++lambda) {
          const int d4 = std::max(N, nu) + 1;
          Vector amp = Vector::Zero(d4);
          for (int k = window_lo(l); k <= window_hi(l, N, nu); ++k)
            amp(nu - k - l) = cplx(g(gen), g(gen));
          amp /= amp.norm();
          const Matrix rho = amp * amp.adjoint();
          REQUIRE(dilated_correction_check(l, lambda, N, nu, rho));
        }
}

TEST_CASE("averaged channel equals the probability-weighted outcome mixture") {
  std::mt19937 gen(23);
  for (int t = 0; t < 10; ++t) {
    const int N = 1 + static_cast<int>(gen() % 4);
    const int nu = static_cast<int>(gen() % 5);
    const PureNumberState psi = random_pure(gen, N);
    const ResourceState rho = random_density(gen, nu);
    Matrix mixture = Matrix::Zero(N + 1, N + 1);
    for (int l = -N; l <= nu; ++l)
      for (int lambda = 0; lambda < cardinality(l, N, nu); ++lambda) {
        const MeasurementResult res = apply_measurement(psi, rho, {l, lambda});
        if (res.post_state)
          mixture += res.probability * res.post_state->matrix();
      }
    const TwoModeDensity avg = averaged_channel(psi, rho);
    REQUIRE_THAT(avg.trace(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE((avg.matrix() - mixture).cwiseAbs().maxCoeff() < 1e-12);
  }
}
