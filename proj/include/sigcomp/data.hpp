#pragma once

#include "sigcomp/model.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigcomp {

enum class Task { Regression, Binary };

struct Dataset {
  Matrix inputs;   // m x d
  Vector targets;  // m
  Task task = Task::Regression;

  int m() const { return static_cast<int>(inputs.rows()); }
  int d() const { return static_cast<int>(inputs.cols()); }

  /// Throws std::invalid_argument when rows disagree, m == 0, or binary targets are not +-1.
  void validate() const;
};

struct NoiseSpec {
  double sigma_tilde = 100.0;
  std::uint64_t seed = 0;
};

/// Radical inverse of `index` (1-based) in `base`.
double halton(std::uint64_t index, unsigned base);

/// Franke's bivariate test function.
double franke(double x1, double x2);

/// Upper bound of the positive noise samples, 1 / (sqrt(2 pi) sigma_tilde).
double noise_scale(double sigma_tilde);

/// `count` samples of noise_scale(sigma_tilde) * U(0,1) from a seeded generator.
std::vector<double> positive_noise(const NoiseSpec& spec, std::size_t count);

/// Training points are Halton indices 1..n_train (bases 2, 3), test points
/// n_train+1..n_train+n_test. Noise only touches training targets.
std::pair<Dataset, Dataset> make_franke_datasets(
    int n_train = 289, int n_test = 121,
    const std::optional<NoiseSpec>& noise = std::nullopt);

struct DigitRecord {
  std::array<double, 64> pixels{};
  int label = 0;
};

/// Parse error carrying the 1-based line number of the offending row (0 for file-level errors).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Reads `p0,...,p63,label` CSV. Pixels must lie in [0,16], labels in 0..9.
std::vector<DigitRecord> load_digits_csv(const std::filesystem::path& path);

/// Filters two digits, maps digit_pos -> +1 and digit_neg -> -1, shuffles with
/// `seed` and puts floor(train_fraction * count) records into training.
std::pair<Dataset, Dataset> make_binary_task(
    const std::vector<DigitRecord>& records, int digit_pos, int digit_neg,
    double train_fraction = 0.7, std::uint64_t seed = 0,
    bool scale_pixels = false);

/// Writes `x0..x{d-1},y` CSV with 17 significant digits.
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

/// Reads the format produced by write_dataset_csv.
Dataset read_dataset_csv(const std::filesystem::path& path, Task task);

}  // namespace sigcomp
