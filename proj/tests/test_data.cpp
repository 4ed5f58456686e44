#include "oracles.hpp"

#include "sigcomp/data.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace sigcomp;
namespace fs = std::filesystem;

namespace {

fs::path digits_path() { return fs::path(SIGCOMP_DATA_DIR) / "digits.csv"; }

fs::path scratch_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sigcomp_test_data";
  fs::create_directories(dir);
  return dir / name;
}

std::string header() {
  std::string h;
  for (int i = 0; i < 64; ++i) h += "p" + std::to_string(i) + ",";
  return h + "label\n";
}

std::string row(int label, int columns = 64, int pixel = 3) {
  std::string r;
  for (int i = 0; i < columns; ++i) r += std::to_string(pixel) + ",";
  return r + std::to_string(label) + "\n";
}

fs::path write_csv(const std::string& name, const std::string& body) {
  const fs::path p = scratch_file(name);
  std::ofstream(p) << body;
  return p;
}

std::size_t parse_error_line(const fs::path& p) {
  try {
    load_digits_csv(p);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("halton examples") {
  CHECK(halton(1, 2) == 0.5);
  CHECK(halton(2, 2) == 0.25);
  CHECK(halton(3, 2) == 0.75);
  CHECK(halton(1, 3) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(halton(2, 3) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(halton(3, 3) == doctest::Approx(1.0 / 9).epsilon(1e-15));
  CHECK_THROWS_AS(halton(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(halton(1, 1), std::invalid_argument);
}

TEST_CASE("halton values are distinct and inside the unit interval") {
  std::set<double> seen;
  for (std::uint64_t k = 1; k <= 1000; ++k) seen.insert(halton(k, 2));
  CHECK(seen.size() == 1000);
  for (unsigned b : {2u, 3u}) {
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      const double h = halton(k, b);
      CHECK(h > 0.0);
      CHECK(h < 1.0);
    }
  }
}

TEST_CASE("franke matches high-precision values and an independent evaluation") {
  // Reference digits computed with 30-digit arithmetic.
  CHECK(std::abs(franke(0.0, 0.0) - 0.766420591284923132) <= 1e-15);
  CHECK(std::abs(franke(0.5, 0.5) - 0.112011599186602364) <= 1e-15);
  CHECK(std::abs(franke(1.0, 1.0) - 2.71238399720868539e-5) <= 1e-18);
  CHECK(std::abs(franke(0.25, 0.75) + 0.00462367295339712532) <= 1e-16);

  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(std::abs(franke(x, y) - oracle::franke(x, y)) <= 1e-12);
  }
}

TEST_CASE("franke datasets follow the halton layout") {
  const auto [train, test] = make_franke_datasets(289, 121);
  CHECK(train.m() == 289);
  CHECK(test.m() == 121);
  CHECK(train.d() == 2);
  CHECK(train.task == Task::Regression);
  CHECK(train.inputs(0, 0) == 0.5);
  CHECK(train.inputs(0, 1) == halton(1, 3));
  CHECK(test.inputs(0, 0) == halton(290, 2));
  CHECK(test.inputs(120, 1) == halton(410, 3));
  for (int i = 0; i < train.m(); ++i) {
    CHECK(train.targets[i] == franke(train.inputs(i, 0), train.inputs(i, 1)));
  }

  const auto again = make_franke_datasets(289, 121);
  CHECK(again.first.inputs == train.inputs);
  CHECK(again.first.targets == train.targets);
  CHECK(again.second.targets == test.targets);
}

TEST_CASE("noise only perturbs training targets") {
  const auto clean = make_franke_datasets(50, 20);
  const auto noisy = make_franke_datasets(50, 20, NoiseSpec{100.0, 3});
  CHECK(noisy.second.targets == clean.second.targets);
  const Vector diff = noisy.first.targets - clean.first.targets;
  CHECK(diff.minCoeff() >= 0.0);
  CHECK(diff.maxCoeff() < noise_scale(100.0));
  CHECK(diff.maxCoeff() > 0.0);
}

TEST_CASE("noise recipe bounds and mean") {
  const double bound = noise_scale(100.0);
  CHECK(bound == doctest::Approx(0.00398942280401432678).epsilon(1e-15));
  for (std::uint64_t seed : {0, 1, 2}) {
    const auto s = positive_noise(NoiseSpec{100.0, seed}, 289);
    REQUIRE(s.size() == 289);
    double sum = 0.0;
    for (double v : s) {
      CHECK(v >= 0.0);
      CHECK(v < bound);
      sum += v;
    }
    const double mean = sum / 289.0;
    CHECK(mean >= 1.7e-3);
    CHECK(mean <= 2.3e-3);
  }
  CHECK(positive_noise(NoiseSpec{100.0, 5}, 10) == positive_noise(NoiseSpec{100.0, 5}, 10));
}

TEST_CASE("noise is uniform by Kolmogorov-Smirnov") {
  const double bound = noise_scale(100.0);
  auto s = positive_noise(NoiseSpec{100.0, 12}, 10000);
  std::sort(s.begin(), s.end());
  double ks = 0.0;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double cdf = s[i] / bound;
    ks = std::max({ks, std::abs((i + 1) / n - cdf), std::abs(cdf - i / n)});
  }
  CHECK(ks < 0.1);
}

TEST_CASE("bundled digits export") {
  const auto records = load_digits_csv(digits_path());
  CHECK(records.size() == 1797);
  std::array<int, 10> counts{};
  for (const auto& r : records) {
    ++counts[r.label];
    for (double p : r.pixels) {
      CHECK(p >= 0.0);
      CHECK(p <= 16.0);
    }
  }
  for (int c : counts) CHECK(c > 150);
}

TEST_CASE("digits parse errors name the row") {
  CHECK(parse_error_line(write_csv("short.csv", header() + row(1) + row(2, 63))) == 3);
  CHECK(parse_error_line(write_csv("label.csv", header() + row(10))) == 2);
  CHECK(parse_error_line(write_csv("pixel.csv", header() + row(1) + row(1) + row(1, 64, 17))) == 4);
  CHECK(parse_error_line(write_csv("text.csv", header() + "a," + row(1, 63))) == 2);
  CHECK_THROWS_AS(load_digits_csv(write_csv("header.csv", row(1))), ParseError);
  CHECK_THROWS_AS(load_digits_csv(scratch_file("missing.csv")), ParseError);
  CHECK(load_digits_csv(write_csv("ok.csv", header() + row(4) + row(9))).size() == 2);
}

TEST_CASE("binary task split sizes") {
  const auto records = load_digits_csv(digits_path());
  const std::array<std::array<int, 4>, 4> expected = {{
      {0, 1, 252, 108}, {2, 5, 251, 108}, {3, 7, 253, 109}, {6, 9, 252, 109}}};
  for (const auto& e : expected) {
    const auto [train, test] = make_binary_task(records, e[0], e[1]);
    CHECK(train.m() == e[2]);
    CHECK(test.m() == e[3]);
    CHECK(train.task == Task::Binary);
    CHECK(train.d() == 64);
    int available = 0;
    for (const auto& r : records) available += (r.label == e[0] || r.label == e[1]);
    CHECK(train.m() + test.m() == available);
    int positives = 0;
    for (const auto* set : {&train, &test})
      for (int i = 0; i < set->m(); ++i) {
        CHECK(std::abs(set->targets[i]) == 1.0);
        positives += set->targets[i] > 0;
      }
    int pos_records = 0;
    for (const auto& r : records) pos_records += r.label == e[0];
    CHECK(positives == pos_records);
  }
}

TEST_CASE("binary task determinism, scaling and errors") {
  const auto records = load_digits_csv(digits_path());
  const auto a = make_binary_task(records, 0, 1, 0.7, 3);
  const auto b = make_binary_task(records, 0, 1, 0.7, 3);
  CHECK(a.first.inputs == b.first.inputs);
  CHECK(a.second.targets == b.second.targets);
  const auto c = make_binary_task(records, 0, 1, 0.7, 4);
  CHECK(a.first.inputs != c.first.inputs);
  const auto scaled = make_binary_task(records, 0, 1, 0.7, 3, true);
  CHECK((scaled.first.inputs * 16.0 - a.first.inputs).norm() == 0.0);

  CHECK_THROWS_AS(make_binary_task(records, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_binary_task(records, 0, 11), std::invalid_argument);
  std::vector<DigitRecord> only_ones;
  for (const auto& r : records)
    if (r.label == 1) only_ones.push_back(r);
  CHECK_THROWS_AS(make_binary_task(only_ones, 0, 1), std::invalid_argument);
}

TEST_CASE("dataset csv round trip") {
  auto [train, test] = make_franke_datasets(20, 5, NoiseSpec{100.0, 1});
  const fs::path p = scratch_file("franke.csv");
  write_dataset_csv(train, p);
  const Dataset back = read_dataset_csv(p, Task::Regression);
  CHECK(back.inputs == train.inputs);
  CHECK(back.targets == train.targets);
  std::ifstream in(p);
  std::string first;
  std::getline(in, first);
  CHECK(first == "x0,x1,y");
}

TEST_CASE("dataset validation") {
  Dataset d;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.inputs = Matrix::Zero(2, 1);
  d.targets = Vector::Zero(3);
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.targets = Vector::Constant(2, 0.5);
  d.task = Task::Binary;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.targets << 1, -1;
  CHECK_NOTHROW(d.validate());
}
