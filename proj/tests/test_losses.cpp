#include "oracles.hpp"

#include "sigcomp/losses.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sigcomp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double prox_objective(double mu, double a, double kappa, LossKind loss) {
  return kappa * scalar_loss(mu, loss) + 0.5 * (mu - a) * (mu - a);
}

}  // namespace

TEST_CASE("outer_value examples") {
  CHECK(outer_value(vec({1, -2, 3}), LossKind::Quadratic) == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
  CHECK(outer_value(vec({1, -2, 3}), LossKind::Absolute) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(outer_value(vec({2, 0.5, -1}), LossKind::Hinge) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(outer_value(Vector(0), LossKind::Quadratic), std::invalid_argument);
}

TEST_CASE("prox piecewise examples") {
  CHECK(prox(2.0, 0.5, LossKind::Absolute) == 1.5);
  CHECK(prox(0.3, 0.5, LossKind::Absolute) == 0.0);
  CHECK(prox(-1.0, 0.5, LossKind::Absolute) == -0.5);
  CHECK(prox(2.0, 0.5, LossKind::Hinge) == 2.0);
  CHECK(prox(0.8, 0.5, LossKind::Hinge) == 1.0);
  CHECK(prox(0.0, 0.5, LossKind::Hinge) == 0.5);

  // Boundary points land on the middle branch.
  CHECK(prox(0.5, 0.5, LossKind::Absolute) == 0.0);
  CHECK(prox(-0.5, 0.5, LossKind::Absolute) == 0.0);
  CHECK(prox(1.0, 0.5, LossKind::Hinge) == 1.0);
  CHECK(prox(0.5, 0.5, LossKind::Hinge) == 1.0);

  const double gs = oracle::golden_section(
      [](long double mu) { return oracle::prox_objective(mu, 0.9L, 0.37L, false); }, -10.0, 10.0);
  CHECK(std::abs(prox(0.9, 0.37, LossKind::Absolute) - gs) <= 1e-8);
}

TEST_CASE("prox errors") {
  CHECK_THROWS_AS(prox(1.0, 0.0, LossKind::Absolute), std::invalid_argument);
  CHECK_THROWS_AS(prox(1.0, -1.0, LossKind::Hinge), std::invalid_argument);
  CHECK_THROWS_AS(prox(1.0, 1.0, LossKind::Quadratic), std::invalid_argument);
}

TEST_CASE("prox agrees with a golden-section oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), uk(1e-3, 5.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const LossKind loss = i % 2 ? LossKind::Hinge : LossKind::Absolute;
    const double a = ua(rng), kappa = uk(rng);
    const double gs = oracle::golden_section(
        [&](long double mu) { return oracle::prox_objective(mu, a, kappa, loss == LossKind::Hinge); },
        a - 3 * kappa - 3, a + 3 * kappa + 3);
    CHECK(std::abs(prox(a, kappa, loss) - gs) <= 1e-8);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("prox is 1-Lipschitz") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), uk(1e-3, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const LossKind loss = i % 2 ? LossKind::Hinge : LossKind::Absolute;
    const double a = ua(rng), b = ua(rng), kappa = uk(rng);
    CHECK(std::abs(prox(a, kappa, loss) - prox(b, kappa, loss)) <= std::abs(a - b) + 1e-15);
  }
}

TEST_CASE("prox beats every grid point") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), uk(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const LossKind loss = i % 2 ? LossKind::Hinge : LossKind::Absolute;
    const double a = ua(rng);
    double kappa = uk(rng);
    if (kappa == 0.0) kappa = 5.0;
    const double p = prox(a, kappa, loss);
    const double best = prox_objective(p, a, kappa, loss);
    const double lo = a - 3 * kappa - 3, hi = a + 3 * kappa + 3;
    for (int g = 0; g <= 100; ++g) {
      const double mu = lo + (hi - lo) * g / 100.0;
      CHECK(best <= prox_objective(mu, a, kappa, loss) + 1e-12);
    }
  }
}

TEST_CASE("in_minimizer_set examples") {
  for (LossKind loss : {LossKind::Quadratic, LossKind::Absolute}) {
    CHECK(in_minimizer_set(Vector::Zero(3), loss, 0.0));
  }
  CHECK_FALSE(in_minimizer_set(Vector::Zero(3), LossKind::Hinge, 0.0));
  CHECK(in_minimizer_set(vec({1.2, 1.0}), LossKind::Hinge, 0.0));
  CHECK_FALSE(in_minimizer_set(vec({1e-3, 0}), LossKind::Absolute, 1e-4));
  CHECK(in_minimizer_set(vec({1e-3, 0}), LossKind::Absolute, 1e-3));
  CHECK(in_minimizer_set(vec({0.95, 2}), LossKind::Hinge, 0.05));
}

TEST_CASE("zero outer value matches minimizer-set membership") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> pick(-2, 2);
  for (int i = 0; i < 500; ++i) {
    Vector z(4);
    for (auto& v : z) v = pick(rng);
    for (LossKind loss : {LossKind::Quadratic, LossKind::Absolute}) {
      CHECK((outer_value(z, loss) == 0.0) == in_minimizer_set(z, loss, 0.0));
    }
    if (in_minimizer_set(z, LossKind::Hinge, 0.0)) CHECK(outer_value(z, LossKind::Hinge) == 0.0);
  }
}

TEST_CASE("outer_value is separable") {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> n(0.0, 2.0);
  for (LossKind loss : {LossKind::Quadratic, LossKind::Absolute, LossKind::Hinge}) {
    for (int trial = 0; trial < 50; ++trial) {
      const int m1 = 1 + trial % 5, m2 = 1 + (trial * 7) % 9;
      Vector a(m1), b(m2), ab(m1 + m2);
      for (auto& v : a) v = n(rng);
      for (auto& v : b) v = n(rng);
      ab << a, b;
      const double expected = (m1 * outer_value(a, loss) + m2 * outer_value(b, loss)) / (m1 + m2);
      CHECK(outer_value(ab, loss) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("loss names round trip") {
  for (LossKind loss : {LossKind::Quadratic, LossKind::Absolute, LossKind::Hinge}) {
    CHECK(parse_loss(to_string(loss)) == loss);
  }
  CHECK_THROWS_AS(parse_loss("huber"), std::invalid_argument);
}
