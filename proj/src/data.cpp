#include "sigcomp/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>

namespace sigcomp {

void Dataset::validate() const {
  if (inputs.rows() < 1) {
    throw std::invalid_argument("dataset is empty");
  }
  if (inputs.rows() != targets.size()) {
    throw std::invalid_argument("dataset has " + std::to_string(inputs.rows()) +
                                " inputs but " + std::to_string(targets.size()) +
                                " targets");
  }
  if (task == Task::Binary) {
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      if (targets[i] != 1.0 && targets[i] != -1.0) {
        throw std::invalid_argument("binary dataset target " + std::to_string(i) +
                                    " is not +-1");
      }
    }
  }
}

double halton(std::uint64_t index, unsigned base) {
  if (index == 0) {
    throw std::invalid_argument("halton: the sequence is 1-indexed");
  }
  if (base < 2) {
    throw std::invalid_argument("halton: base must be >= 2");
  }
  double result = 0.0;
  double f = 1.0;
  while (index > 0) {
    f /= base;
    result += f * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

double franke(double x1, double x2) {
  const double a = 9.0 * x1;
  const double b = 9.0 * x2;
  return 0.75 * std::exp(-0.25 * ((a - 2) * (a - 2) + (b - 2) * (b - 2))) +
         0.75 * std::exp(-(a + 1) * (a + 1) / 49.0 - (b + 1) * (b + 1) / 10.0) +
         0.5 * std::exp(-0.25 * ((a - 7) * (a - 7) + (b - 3) * (b - 3))) -
         0.2 * std::exp(-(a - 4) * (a - 4) - (b - 7) * (b - 7));
}

double noise_scale(double sigma_tilde) {
  if (!(sigma_tilde > 0.0)) {
    throw std::invalid_argument("noise sigma must be > 0");
  }
  return 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_tilde);
}

std::vector<double> positive_noise(const NoiseSpec& spec, std::size_t count) {
  const double scale = noise_scale(spec.sigma_tilde);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(count);
  for (auto& v : out) {
    v = scale * unit(rng);
  }
  return out;
}

std::pair<Dataset, Dataset> make_franke_datasets(
    int n_train, int n_test, const std::optional<NoiseSpec>& noise) {
  if (n_train < 1 || n_test < 1) {
    throw std::invalid_argument("Franke datasets need at least one training and one test point");
  }
  auto build = [](std::uint64_t first, int count) {
    Dataset ds;
    ds.task = Task::Regression;
    ds.inputs.resize(count, 2);
    ds.targets.resize(count);
    for (int i = 0; i < count; ++i) {
      const double x1 = halton(first + i, 2);
      const double x2 = halton(first + i, 3);
      ds.inputs(i, 0) = x1;
      ds.inputs(i, 1) = x2;
      ds.targets[i] = franke(x1, x2);
    }
    return ds;
  };
  Dataset train = build(1, n_train);
  Dataset test = build(static_cast<std::uint64_t>(n_train) + 1, n_test);
  if (noise) {
    const auto xi = positive_noise(*noise, static_cast<std::size_t>(n_train));
    for (int i = 0; i < n_train; ++i) {
      train.targets[i] += xi[i];
    }
  }
  return {std::move(train), std::move(test)};
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string_view trim_eol(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && !s.empty();
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && !s.empty();
}

std::string row_msg(std::size_t line, const std::string& what) {
  return "row " + std::to_string(line) + ": " + what;
}

void write_double(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

std::vector<DigitRecord> load_digits_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open digits file '" + path.string() + "'", 0);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("digits file '" + path.string() + "' is empty", 1);
  }
  {
    const auto header = split_commas(trim_eol(line));
    bool ok = header.size() == 65 && header[64] == "label";
    for (int i = 0; ok && i < 64; ++i) {
      ok = header[i] == "p" + std::to_string(i);
    }
    if (!ok) {
      throw ParseError(row_msg(1, "expected header p0,...,p63,label"), 1);
    }
  }

  std::vector<DigitRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim_eol(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (fields.size() != 65) {
      throw ParseError(row_msg(lineno, "expected 65 columns, found " +
                                           std::to_string(fields.size())),
                       lineno);
    }
    DigitRecord rec;
    for (int i = 0; i < 64; ++i) {
      double v = 0.0;
      if (!parse_double(fields[i], v)) {
        throw ParseError(row_msg(lineno, "pixel p" + std::to_string(i) +
                                             " is not a number"),
                         lineno);
      }
      if (!(v >= 0.0 && v <= 16.0)) {
        throw ParseError(row_msg(lineno, "pixel p" + std::to_string(i) +
                                             " out of range [0,16]"),
                         lineno);
      }
      rec.pixels[i] = v;
    }
    if (!parse_int(fields[64], rec.label)) {
      throw ParseError(row_msg(lineno, "label is not an integer"), lineno);
    }
    if (rec.label < 0 || rec.label > 9) {
      throw ParseError(row_msg(lineno, "label " + std::to_string(rec.label) +
                                           " out of range 0..9"),
                       lineno);
    }
    records.push_back(rec);
  }
  return records;
}

std::pair<Dataset, Dataset> make_binary_task(
    const std::vector<DigitRecord>& records, int digit_pos, int digit_neg,
    double train_fraction, std::uint64_t seed, bool scale_pixels) {
  if (digit_pos == digit_neg) {
    throw std::invalid_argument("binary task needs two different digits");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0,1)");
  }
  std::vector<std::size_t> picked;
  bool seen_pos = false;
  bool seen_neg = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].label == digit_pos) {
      seen_pos = true;
      picked.push_back(i);
    } else if (records[i].label == digit_neg) {
      seen_neg = true;
      picked.push_back(i);
    }
  }
  if (!seen_pos || !seen_neg) {
    throw std::invalid_argument("digit " + std::to_string(seen_pos ? digit_neg : digit_pos) +
                                " does not occur in the records");
  }

  std::mt19937_64 rng(seed);
  std::shuffle(picked.begin(), picked.end(), rng);

  const auto total = static_cast<int>(picked.size());
  // The guard keeps e.g. 0.7 * 360 = 251.99999999999997 from rounding down to 251.
  const int n_train = static_cast<int>(std::floor(train_fraction * total + 1e-9));
  const double pixel_scale = scale_pixels ? 1.0 / 16.0 : 1.0;

  auto build = [&](int begin, int end) {
    Dataset ds;
    ds.task = Task::Binary;
    ds.inputs.resize(end - begin, 64);
    ds.targets.resize(end - begin);
    for (int r = begin; r < end; ++r) {
      const auto& rec = records[picked[r]];
      for (int c = 0; c < 64; ++c) {
        ds.inputs(r - begin, c) = rec.pixels[c] * pixel_scale;
      }
      ds.targets[r - begin] = rec.label == digit_pos ? 1.0 : -1.0;
    }
    return ds;
  };
  return {build(0, n_train), build(n_train, total)};
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  for (int c = 0; c < data.d(); ++c) {
    out << 'x' << c << ',';
  }
  out << "y\n";
  for (int r = 0; r < data.m(); ++r) {
    for (int c = 0; c < data.d(); ++c) {
      write_double(out, data.inputs(r, c));
      out << ',';
    }
    write_double(out, data.targets[r]);
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

Dataset read_dataset_csv(const std::filesystem::path& path, Task task) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open dataset file '" + path.string() + "'", 0);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("dataset file '" + path.string() + "' is empty", 1);
  }
  const auto header = split_commas(trim_eol(line));
  const auto d = static_cast<int>(header.size()) - 1;
  bool ok = d >= 1 && header.back() == "y";
  for (int i = 0; ok && i < d; ++i) {
    ok = header[i] == "x" + std::to_string(i);
  }
  if (!ok) {
    throw ParseError(row_msg(1, "expected header x0,...,x{d-1},y"), 1);
  }

  std::vector<double> values;
  std::size_t lineno = 1;
  int rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim_eol(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (static_cast<int>(fields.size()) != d + 1) {
      throw ParseError(row_msg(lineno, "expected " + std::to_string(d + 1) +
                                           " columns, found " +
                                           std::to_string(fields.size())),
                       lineno);
    }
    for (const auto f : fields) {
      double v = 0.0;
      if (!parse_double(f, v) || !std::isfinite(v)) {
        throw ParseError(row_msg(lineno, "malformed number '" + std::string(f) + "'"),
                         lineno);
      }
      values.push_back(v);
    }
    ++rows;
  }

  Dataset ds;
  ds.task = task;
  ds.inputs.resize(rows, d);
  ds.targets.resize(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < d; ++c) {
      ds.inputs(r, c) = values[static_cast<std::size_t>(r) * (d + 1) + c];
    }
    ds.targets[r] = values[static_cast<std::size_t>(r) * (d + 1) + d];
  }
  ds.validate();
  return ds;
}

}  // namespace sigcomp
