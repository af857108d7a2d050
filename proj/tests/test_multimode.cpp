#include <catch_amalgamated.hpp>

#include <random>

#include "fockport/metrics.hpp"
#include "fockport/multimode.hpp"
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

}  // namespace

TEST_CASE("block_dimension values and errors") {
  for (int k = 0; k <= 6; ++k) REQUIRE(block_dimension(k, 1) == 1.0);
  REQUIRE(block_dimension(2, 2) == 3.0);
  REQUIRE(block_dimension(3, 3) == 10.0);
  REQUIRE_THROWS_AS(block_dimension(-1, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(block_dimension(2, 0), std::invalid_argument);
}

TEST_CASE("occupation-count convolution identity") {
  // sum_k D_k^(m) D_{N-k}^(M-m) = C(N+M-1, N)
  for (int N = 0; N <= 10; ++N)
    for (int M = 2; M <= 8; ++M)
      for (int m = 1; m < M; ++m) {
        double sum = 0.0;
        for (int k = 0; k <= N; ++k)
          sum += block_dimension(k, m) * block_dimension(N - k, M - m);
        REQUIRE(sum == static_cast<double>(binomial_exact(N + M - 1, N)));
      }
  // N=2, M=3, m=1 -> 6.
  double sum = 0.0;
  for (int k = 0; k <= 2; ++k)
    sum += block_dimension(k, 1) * block_dimension(2 - k, 2);
  REQUIRE(sum == 6.0);
}

TEST_CASE("m = 1 reduces to the two-mode fidelity") {
  std::mt19937 gen(47);
  for (int t = 0; t < 100; ++t) {
    const int N = 1 + static_cast<int>(gen() % 6);
    const int nu = static_cast<int>(gen() % 7);
    const ResourceState rho = random_density(gen, nu);
    REQUIRE_THAT(fidelity_multimode(rho, N, 1),
                 Catch::Matchers::WithinAbs(fidelity_closed_form(rho, N),
                                            1e-12));
  }
}

TEST_CASE("multimode fidelity is monotone in m for the max-ent resource") {
  const int N = 10;
  for (int nu : {10, 100}) {
    const ResourceState rho = build_resource(ResourceSpec::max_ent(nu));
    const double bound = (nu - N + 1.0) / (nu + 1.0);
    double prev = 0.0;
    for (int m = 1; m <= 8; ++m) {
      const double f = fidelity_multimode(rho, N, m);
      REQUIRE(f > prev);
      REQUIRE(f >= bound);
      if (m == 1) REQUIRE(f > bound);
      prev = f;
    }
  }
}

TEST_CASE("product resource lower bound") {
  REQUIRE_THAT(product_resource_lower_bound(1, 99, 1),
               Catch::Matchers::WithinAbs(0.99, 1e-15));
  REQUIRE_THAT(product_resource_lower_bound(1, 99, 3),
               Catch::Matchers::WithinAbs(std::pow(0.99, 3), 1e-15));
  REQUIRE(product_resource_lower_bound(2, 100000, 4) > 0.9999);
  REQUIRE_THROWS_AS(product_resource_lower_bound(5, 3, 1), std::domain_error);
  REQUIRE_THROWS_AS(product_resource_lower_bound(1, 5, 0), std::domain_error);
}

TEST_CASE("multimode fidelity input validation") {
  const ResourceState rho = build_resource(ResourceSpec::max_ent(4));
  REQUIRE_THROWS_AS(fidelity_multimode(rho, -1, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(fidelity_multimode(rho, 3, 0), std::invalid_argument);
}
