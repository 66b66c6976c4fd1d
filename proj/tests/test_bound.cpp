#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tdblda/bound.hpp"
#include "tdblda/class_stats.hpp"
#include "tdblda/error.hpp"

using namespace tdblda;
using namespace tdblda::testing;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

ProjectedGaussianModel scalar_model(double m1, double m2, double var) {
  ProjectedGaussianModel m;
  m.projected_class_means = {{m1}, {m2}};
  m.shared_covariance = Matrix{{var}};
  m.priors = {0.5, 0.5};
  m.direction = {1.0};
  return m;
}

}  // namespace

TEST_CASE("projected model on E1") {
  const auto data = e1_dataset();
  const auto stats = compute_stats(data);
  const std::vector<double> down{0.0, 1.0};
  const auto m = projected_model(data, stats, down);
  CHECK(m.projected_class_means[0] == std::vector<double>{0.0, 1.0});
  CHECK(m.projected_class_means[1] == std::vector<double>{0.0, 1.0});
  CHECK(trace(m.shared_covariance) == 4.0);

  const std::vector<double> across{1.0, 0.0};
  CHECK(projected_model(data, stats, across).shared_covariance == Matrix(2, 2));

  const std::vector<double> longer{1.0, 1.0};
  CHECK(code_of([&] { projected_model(data, stats, longer); }) == ErrorCode::NonUnitDirection);
}

TEST_CASE("projected covariance trace equals projected within-class energy") {
  std::mt19937_64 gen(40);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = random_dataset(gen, 5, 3, 3, 20);
    const auto stats = compute_stats(data);
    std::vector<double> w(5);
    for (double& v : w) v = z(gen);
    const double n = norm2(w);
    for (double& v : w) v /= n;
    const auto m = projected_model(data, stats, w);
    double energy = 0.0;
    for (std::size_t l = 0; l < data.size(); ++l) {
      const Matrix dev = data.samples[l] - stats.class_means[static_cast<std::size_t>(data.labels[l] - 1)];
      energy += squared_frobenius_norm(multiply_atb(Matrix::column(w), dev));
    }
    CHECK(std::abs(trace(m.shared_covariance) - energy) <= 1e-9 * energy);
  }
}

TEST_CASE("Bhattacharyya error closed form") {
  CHECK(bhattacharyya_error(scalar_model(0.3, 0.3, 2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bhattacharyya_error(scalar_model(1.0, -1.0, 1.0)) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(code_of([] { bhattacharyya_error(scalar_model(1.0, -1.0, 0.0)); }) == ErrorCode::SingularCovariance);

  auto singular = scalar_model(0, 1, 1);
  singular.projected_class_means = {{0, 0}, {1, 1}};
  singular.shared_covariance = Matrix{{1, 1}, {1, 1}};
  CHECK(code_of([&] { bhattacharyya_error(singular); }) == ErrorCode::SingularCovariance);
}

TEST_CASE("chord slope") {
  CHECK(chord_slope(0.0) == 1.0);
  CHECK(std::abs(chord_slope(1e-8) - 1.0) <= 1e-6);
  CHECK(chord_slope(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(code_of([] { chord_slope(-1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bound_rhs") {
  std::mt19937_64 gen(3);
  SUBCASE("identical class means") {
    // Same mean in both classes, so Δ = 0 and the bound is Σ√(P_i P_j).
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<Matrix> xs;
    std::vector<int> ys;
    for (int s = 0; s < 6; ++s) {
      Matrix x(3, 2);
      for (double& v : x.data()) v = z(gen);
      xs.push_back(x);
      xs.push_back(x * -1.0);
      ys.push_back(1);
      ys.push_back(1);
    }
    for (int s = 0; s < 6; ++s) {
      Matrix x(3, 2);
      for (double& v : x.data()) v = z(gen);
      xs.push_back(x);
      xs.push_back(x * -1.0);
      ys.push_back(2);
      ys.push_back(2);
    }
    const auto data = make_dataset(xs, ys);
    const auto stats = compute_stats(data);
    const std::vector<double> w{0.6, 0.0, 0.8};
    const auto rep = bound_rhs(data, stats, w, 0.7);
    CHECK(rep.rhs == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.epsilon_b == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.margin >= -1e-12);
  }
  SUBCASE("Gaussian classes, cap at the largest exponent") {
    const auto data = gaussian_classes(gen, 4, 2, 2, 30);
    const auto stats = compute_stats(data);
    const std::vector<double> w{0.5, 0.5, 0.5, 0.5};
    const auto exps = pair_exponents(projected_model(data, stats, w));
    const auto rep = bound_rhs(data, stats, w, exps[0]);
    CHECK(rep.a_constant == doctest::Approx(-std::expm1(-exps[0]) / exps[0]));
    CHECK(rep.a_constant > 0.0);
    CHECK(rep.a_constant <= 1.0);
    CHECK(rep.margin >= -kMarginTol);
    CHECK(rep.margin == doctest::Approx(rep.rhs - rep.epsilon_b));
  }
  SUBCASE("tiny cap approaches a = 1") {
    const auto data = gaussian_classes(gen, 3, 2, 2, 20);
    const auto rep = bound_rhs(data, compute_stats(data), std::vector<double>{1.0, 0.0, 0.0}, 1e-8);
    CHECK(std::abs(rep.a_constant - 1.0) <= 1e-6);
  }
  SUBCASE("non-positive cap is rejected") {
    const auto data = gaussian_classes(gen, 3, 2, 2, 20);
    CHECK(code_of([&] { bound_rhs(data, compute_stats(data), std::vector<double>{1.0, 0.0, 0.0}, 0.0); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("inequality chain per pair") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = gaussian_classes(gen, 5, 2, 4, 12, 0.3 + trial * 0.3);
    const auto ver = verify_bound(data, 50, 1000 + static_cast<std::uint64_t>(trial));
    CHECK(ver.success_fraction == 1.0);
    for (const auto& t : ver.trials) {
      CHECK(t.check.report.epsilon_b > 0.0);
      for (const auto& p : t.check.pairs) {
        CHECK(p.norm_chain_holds);
        CHECK(p.shrink_holds);
        CHECK(p.trade_holds);
      }
    }
  }
}

TEST_CASE("verify_bound") {
  std::mt19937_64 gen(7);
  SUBCASE("well-conditioned data") {
    const auto data = gaussian_classes(gen, 6, 3, 2, 40);
    const auto ver = verify_bound(data, 100, 5);
    CHECK(ver.trials.size() == 100);
    CHECK(ver.success_fraction == 1.0);
    // ε_B never exceeds the sum of prior weights.
    for (const auto& t : ver.trials) CHECK(t.check.report.epsilon_b <= 0.5 + 1e-15);
    const auto again = verify_bound(data, 100, 5);
    CHECK(again.trials.back().check.report.rhs == ver.trials.back().check.report.rhs);
  }
  SUBCASE("zero within-class spread") {
    const auto data = make_dataset({Matrix{{1, 2}}, Matrix{{1, 2}}, Matrix{{0, 1}}, Matrix{{0, 1}}}, {1, 1, 2, 2});
    CHECK(code_of([&] { verify_bound(data, 10, 0); }) == ErrorCode::DegenerateDataset);
  }
  SUBCASE("no trials") {
    const auto data = gaussian_classes(gen, 3, 2, 2, 10);
    const auto ver = verify_bound(data, 0, 0);
    CHECK(ver.trials.empty());
    CHECK(ver.success_fraction == 1.0);
  }
}
