#include "sigcomp/diagnostics.hpp"

#include "sigcomp/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace sigcomp {

namespace {

void check_lengths(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw std::invalid_argument("prediction and target lengths differ (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
  if (a == 0) {
    throw std::invalid_argument("error metrics need at least one sample");
  }
}

}  // namespace

double rms_error(const Eigen::Ref<const Vector>& pred,
                 const Eigen::Ref<const Vector>& actual) {
  check_lengths(pred.size(), actual.size());
  return std::sqrt((pred - actual).squaredNorm() / static_cast<double>(pred.size()));
}

double max_error(const Eigen::Ref<const Vector>& pred,
                 const Eigen::Ref<const Vector>& actual) {
  check_lengths(pred.size(), actual.size());
  return (pred - actual).cwiseAbs().maxCoeff();
}

int classification_errors(const ParamVector& theta, const NetworkShape& shape,
                          const Dataset& data) {
  if (data.task != Task::Binary) {
    throw std::invalid_argument("classification_errors needs a binary dataset");
  }
  const Vector f = predict(theta, shape, data.inputs);
  int errors = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    // Zero output has no sign and is always wrong.
    if (!(data.targets[i] * f[i] > 0.0)) {
      ++errors;
    }
  }
  return errors;
}

RankInfo jacobian_rank(const Matrix& J, double tol_factor) {
  if (J.rows() < 1 || J.cols() < 1) {
    throw std::invalid_argument("jacobian_rank: empty matrix");
  }
  if (!J.allFinite()) {
    throw NumericalError("jacobian_rank: matrix has non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(J);
  const Vector& sv = svd.singularValues();
  RankInfo info;
  info.sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  info.sigma_min = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
  const double cutoff = tol_factor * static_cast<double>(std::max(J.rows(), J.cols())) *
                        info.sigma_max;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++info.rank;
  }
  info.full_row_rank = info.rank == J.rows();
  return info;
}

int adaptive_network_size(int m, int d) {
  if (m < 1 || d < 1) {
    throw std::invalid_argument("adaptive_network_size: m and d must be >= 1");
  }
  const int bound = (m - 1 + (d + 2) - 1) / (d + 2);
  return std::max(1, bound);
}

Matrix finite_diff_jacobian(const ParamVector& theta, const NetworkShape& shape,
                            const Dataset& data, LossKind loss, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite difference step must be > 0");
  }
  Matrix J(data.m(), shape.n());
  ParamVector probe = theta;
  for (int j = 0; j < shape.n(); ++j) {
    probe[j] = theta[j] + h;
    const Vector plus = inner_value(probe, shape, data.inputs, data.targets, loss);
    probe[j] = theta[j] - h;
    const Vector minus = inner_value(probe, shape, data.inputs, data.targets, loss);
    probe[j] = theta[j];
    J.col(j) = (plus - minus) / (2.0 * h);
  }
  return J;
}

}  // namespace sigcomp
