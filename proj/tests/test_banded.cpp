#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "fv1d/banded.hpp"

using namespace fv1d;
using Catch::Matchers::WithinAbs;

namespace {

// Random band matrix alongside its dense mirror, for checking against
// Eigen's fully pivoted dense solver.
struct BandPair {
  BandedMatrix band;
  Eigen::MatrixXd dense;
};

BandPair random_band(int n, int kl, int ku, std::mt19937& rng) {
  BandPair out{BandedMatrix(n, kl, ku), Eigen::MatrixXd::Zero(n, n)};
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - out.band.lower());
         j <= std::min(n - 1, i + out.band.upper()); ++j) {
      const double v = coef(rng);
      out.band.at(i, j) = v;
      out.dense(i, j) = v;
    }
  return out;
}

}  // namespace

TEST_CASE("banded storage reads and writes inside the band only",
          "[banded]") {
  BandedMatrix m(5, 1, 2);
  m.at(0, 0) = 3.0;
  m.at(0, 2) = -1.0;
  m.at(3, 2) = 7.0;
  REQUIRE(m.get(0, 0) == 3.0);
  REQUIRE(m.get(0, 2) == -1.0);
  REQUIRE(m.get(3, 2) == 7.0);
  REQUIRE(m.get(0, 3) == 0.0);  // outside: reads as zero
  REQUIRE(m.get(4, 0) == 0.0);
  REQUIRE_THROWS_AS(m.at(0, 3) = 1.0, std::logic_error);
  REQUIRE_THROWS_AS(m.at(2, 0) = 1.0, std::logic_error);
  REQUIRE_THROWS_AS(m.at(5, 0) = 1.0, std::logic_error);
  REQUIRE_THROWS_AS(BandedMatrix(0, 1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(BandedMatrix(4, -1, 0), std::invalid_argument);

  SECTION("bandwidths wider than the matrix are clamped") {
    BandedMatrix wide(3, 10, 10);
    REQUIRE(wide.lower() == 2);
    REQUIRE(wide.upper() == 2);
    wide.at(0, 2) = 1.0;
    REQUIRE(wide.get(0, 2) == 1.0);
  }
}

TEST_CASE("band multiply matches the dense product", "[banded]") {
  std::mt19937 rng(11);
  auto [band, dense] = random_band(9, 2, 3, rng);
  Eigen::VectorXd x = Eigen::VectorXd::Random(9);
  std::vector<double> xs(x.data(), x.data() + 9), ys(9);
  band.multiply(xs, ys);
  Eigen::VectorXd want = dense * x;
  for (int i = 0; i < 9; ++i) REQUIRE_THAT(ys[i], WithinAbs(want(i), 1e-13));
  REQUIRE_THAT(band.inf_norm(),
               WithinAbs(dense.cwiseAbs().rowwise().sum().maxCoeff(), 1e-13));
}

TEST_CASE("banded solve agrees with a dense solver", "[banded]") {
  std::mt19937 rng(2024);
  const int shapes[][3] = {{1, 0, 0}, {5, 1, 1}, {8, 0, 3},  {8, 3, 0},
                           {12, 2, 2}, {30, 4, 4}, {40, 3, 5}, {45, 5, 3}};
  for (auto [n, kl, ku] : shapes) {
    for (int trial = 0; trial < 6; ++trial) {
      auto [band, dense] = random_band(n, kl, ku, rng);
      if (std::abs(dense.determinant()) < 1e-6) continue;  // skip near-singular draws
      Eigen::VectorXd rhs = Eigen::VectorXd::Random(n);
      std::vector<double> b(rhs.data(), rhs.data() + n);
      auto x = solve_banded(band, b);
      Eigen::VectorXd want = dense.fullPivLu().solve(rhs);
      const double scale = want.cwiseAbs().maxCoeff() + 1.0;
      for (int i = 0; i < n; ++i)
        REQUIRE_THAT(x[i], WithinAbs(want(i), 1e-8 * scale));
    }
  }
}

TEST_CASE("pivoting handles rows that need reordering", "[banded]") {
  // leading entry is zero, so an unpivoted elimination would divide by zero
  BandedMatrix m(3, 1, 1);
  m.at(0, 0) = 0.0;
  m.at(0, 1) = 2.0;
  m.at(1, 0) = 1.0;
  m.at(1, 1) = 1.0;
  m.at(1, 2) = 1.0;
  m.at(2, 1) = 4.0;
  m.at(2, 2) = -2.0;
  const std::vector<double> b{2.0, 3.0, 2.0};
  auto x = solve_banded(m, b);
  // solve by hand: x1 = 1, from row 0; then x0 + x2 = 2, 4 - 2 x2 = 2
  REQUIRE_THAT(x[1], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(x[2], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(x[0], WithinAbs(1.0, 1e-12));
}

TEST_CASE("second difference system has the known solution", "[banded]") {
  const int n = 25;
  BandedMatrix m(n, 1, 1);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 2.0;
    if (i > 0) m.at(i, i - 1) = -1.0;
    if (i + 1 < n) m.at(i, i + 1) = -1.0;
  }
  const std::vector<double> b(n, 1.0);
  auto x = solve_banded(m, b);
  for (int i = 0; i < n; ++i) {
    const double want = 0.5 * (i + 1.0) * (n - i);
    REQUIRE_THAT(x[i], WithinAbs(want, 1e-10 * want));
  }
}

TEST_CASE("singular systems are reported", "[banded]") {
  BandedMatrix zero_pivot(3, 1, 1);
  zero_pivot.at(0, 0) = 1.0;
  zero_pivot.at(1, 1) = 0.0;  // entire middle column effectively empty
  zero_pivot.at(2, 2) = 1.0;
  const std::vector<double> b{1.0, 1.0, 1.0};
  REQUIRE_THROWS_AS(solve_banded(zero_pivot, b), SingularMatrix);

  // rank-deficient but without an exact zero pivot until elimination
  BandedMatrix dependent(3, 2, 2);
  const double rows[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dependent.at(i, j) = rows[i][j];
  REQUIRE_THROWS_AS(solve_banded(dependent, b), SingularMatrix);
}

TEST_CASE("solve validates the right-hand side length", "[banded]") {
  BandedMatrix m(4, 1, 1);
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1.0;
  const std::vector<double> b{1.0, 2.0};
  REQUIRE_THROWS_AS(solve_banded(m, b), LengthMismatch);
}
