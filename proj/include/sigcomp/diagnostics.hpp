#pragma once

#include "sigcomp/data.hpp"
#include "sigcomp/model.hpp"

namespace sigcomp {

double rms_error(const Eigen::Ref<const Vector>& pred,
                 const Eigen::Ref<const Vector>& actual);
double max_error(const Eigen::Ref<const Vector>& pred,
                 const Eigen::Ref<const Vector>& actual);

/// Samples with sign(f(x_i)) != y_i. f(x_i) == 0 counts as an error.
int classification_errors(const ParamVector& theta, const NetworkShape& shape,
                          const Dataset& data);

struct RankInfo {
  int rank = 0;
  bool full_row_rank = false;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
};

/// Numerical rank: singular values above tol_factor * max(m, n) * sigma_max.
RankInfo jacobian_rank(const Matrix& J, double tol_factor = 1e-10);

/// Smallest q with (d + 2) q + 1 >= m, clamped to at least 1.
int adaptive_network_size(int m, int d);

/// Central differences of the inner map, column by column.
Matrix finite_diff_jacobian(const ParamVector& theta, const NetworkShape& shape,
                            const Dataset& data, LossKind loss, double h = 1e-5);

}  // namespace sigcomp
