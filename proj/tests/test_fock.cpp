#include <catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "fockport/fock.hpp"

using namespace fockport;

namespace {

// Exact big-integer binomial, independent of the log-gamma route.
boost::multiprecision::cpp_int exact_binomial(int n, int k) {
  boost::multiprecision::cpp_int num = 1, den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= n - k + i;
    den *= i;
  }
  return num / den;
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

TEST_CASE("log_binomial matches exact binomials up to huge arguments") {
  for (auto [n, k] : {std::pair{5, 2}, {30, 15}, {100, 3}, {300, 150},
                      {250, 7}, {300, 299}}) {
    const double ref = static_cast<double>(
        boost::multiprecision::log(
            exact_binomial(n, k).convert_to<
                boost::multiprecision::cpp_bin_float_50>()));
    REQUIRE_THAT(log_binomial(n, k),
                 Catch::Matchers::WithinRel(ref, 1e-13));
  }
  REQUIRE_THROWS_AS(log_binomial(3, 4), std::domain_error);
  REQUIRE_THROWS_AS(log_binomial(3, -1), std::domain_error);
}

TEST_CASE("binomial_exact small values") {
  REQUIRE(binomial_exact(0, 0) == 1);
  REQUIRE(binomial_exact(4, 2) == 6);
  REQUIRE(binomial_exact(10, 5) == 252);
  REQUIRE(binomial_exact(3, 2) == 3);  // C(k+m-1, k) with k=2, m=2
  REQUIRE_THROWS_AS(binomial_exact(2, 3), std::domain_error);
}

TEST_CASE("FockLabel validates occupations") {
  REQUIRE_NOTHROW(FockLabel({1, 2, 0}, 3));
  REQUIRE_THROWS_AS(FockLabel({1, 2}, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(FockLabel({-1, 2}, 1), std::invalid_argument);
}

TEST_CASE("PureNumberState enforces shape and normalization") {
  Vector c(3);
  c << 0.6, 0.0, 0.8;
  REQUIRE_NOTHROW(PureNumberState(2, c));
  REQUIRE_THROWS_AS(PureNumberState(3, c), std::invalid_argument);
  c(0) = 0.7;
  REQUIRE_THROWS_AS(PureNumberState(2, c), std::invalid_argument);
}

TEST_CASE("ResourceState rejects malformed matrices") {
  Matrix ok = Matrix::Identity(3, 3) / 3.0;
  REQUIRE_NOTHROW(ResourceState(2, ok));

  Matrix non_herm = ok;
  non_herm(0, 1) = 0.1;
  REQUIRE_THROWS_AS(ResourceState(2, non_herm), std::invalid_argument);

  Matrix bad_trace = Matrix::Identity(3, 3);
  REQUIRE_THROWS_AS(ResourceState(2, bad_trace), std::invalid_argument);

  Matrix not_psd = Matrix::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  REQUIRE_THROWS_AS(ResourceState(1, not_psd), std::invalid_argument);
}

TEST_CASE("TwoModeDensity trace conventions") {
  Matrix half = Matrix::Identity(2, 2) / 4.0;
  REQUIRE_THROWS_AS(TwoModeDensity(1, half, true), std::invalid_argument);
  REQUIRE_NOTHROW(TwoModeDensity(1, half, false));
  const TwoModeDensity d(1, half, false);
  REQUIRE_THAT(d.trace(), Catch::Matchers::WithinAbs(0.5, 1e-15));
  REQUIRE_FALSE(d.normalized());
}

TEST_CASE("negativity closed form equals the partial-transpose route") {
  std::mt19937 gen(7);
  for (int t = 0; t < 30; ++t) {
    const int total = 1 + static_cast<int>(gen() % 5);
    const ResourceState rho = random_density(gen, total);
    const TwoModeDensity state(total, rho.matrix(), true);
    REQUIRE_THAT(negativity(state),
                 Catch::Matchers::WithinAbs(
                     negativity_via_partial_transpose(state), 1e-10));
  }
}

TEST_CASE("negativity of a diagonal state vanishes") {
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.5;
  const TwoModeDensity state(2, diag, true);
  REQUIRE(negativity(state) == 0.0);
  REQUIRE_THAT(negativity_via_partial_transpose(state),
               Catch::Matchers::WithinAbs(0.0, 1e-12));
}
