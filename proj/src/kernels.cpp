#include "sigcomp/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sigcomp {

namespace {

// Below this many Jacobian entries the thread start-up costs more than the work.
constexpr Eigen::Index kParallelThreshold = 4096;

// Shared by both execution paths so a row is computed the same way everywhere.
inline void residual_row(const ParamVector& theta, const NetworkShape& shape,
                         const Matrix& inputs, const Vector& targets,
                         LossKind loss, Eigen::Index i, Vector& F, Matrix* J) {
  const int d = shape.d();
  const auto x = inputs.row(i);
  const double y = targets[i];
  const double sign = loss == LossKind::Hinge ? y : 1.0;
  double f = 0.0;
  for (int j = 0; j < shape.q(); ++j) {
    double a = theta[shape.u_offset() + j];
    const double* v = theta.data() + shape.v_offset() + j * d;
    for (int k = 0; k < d; ++k) {
      a += v[k] * x[k];
    }
    const double s = sigmoid(a);
    const double w = theta[shape.w_offset() + j];
    f += w * s;
    if (J != nullptr) {
      const double ws = sign * w * s * (1.0 - s);
      (*J)(i, shape.w_offset() + j) = sign * s;
      for (int k = 0; k < d; ++k) {
        (*J)(i, shape.v_offset() + j * d + k) = ws * x[k];
      }
      (*J)(i, shape.u_offset() + j) = ws;
    }
  }
  f += theta[shape.bias_offset()];
  if (J != nullptr) {
    (*J)(i, shape.bias_offset()) = sign;
  }
  F[i] = loss == LossKind::Hinge ? y * f : f - y;
}

inline double column_dot(const Matrix& J, Eigen::Index a, Eigen::Index b) {
  const double* ca = J.col(a).data();
  const double* cb = J.col(b).data();
  const Eigen::Index m = J.rows();
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  Eigen::Index i = 0;
  for (; i + 4 <= m; i += 4) {
    acc[0] += ca[i] * cb[i];
    acc[1] += ca[i + 1] * cb[i + 1];
    acc[2] += ca[i + 2] * cb[i + 2];
    acc[3] += ca[i + 3] * cb[i + 3];
  }
  for (; i < m; ++i) {
    acc[0] += ca[i] * cb[i];
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace

namespace ref {

void assemble_residuals(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss, Vector& F, Matrix* J) {
  const Eigen::Index m = inputs.rows();
  F.resize(m);
  if (J != nullptr) {
    J->resize(m, shape.n());
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    residual_row(theta, shape, inputs, targets, loss, i, F, J);
  }
}

Matrix gram(const Matrix& J) {
  const Eigen::Index n = J.cols();
  Matrix G(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a <= b; ++a) {
      G(a, b) = column_dot(J, a, b);
      G(b, a) = G(a, b);
    }
  }
  return G;
}

}  // namespace ref

namespace par {

void assemble_residuals(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss, Vector& F, Matrix* J) {
  const Eigen::Index m = inputs.rows();
  F.resize(m);
  if (J != nullptr) {
    J->resize(m, shape.n());
  }
  const bool big = m * shape.n() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
  for (Eigen::Index i = 0; i < m; ++i) {
    residual_row(theta, shape, inputs, targets, loss, i, F, J);
  }
}

Matrix gram(const Matrix& J) {
  const Eigen::Index n = J.cols();
  Matrix G(n, n);
  const bool big = J.rows() * n >= kParallelThreshold;
  // Column b costs b+1 dot products, so hand out columns dynamically.
#pragma omp parallel for schedule(dynamic, 8) if (big)
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a <= b; ++a) {
      G(a, b) = column_dot(J, a, b);
    }
  }
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < b; ++a) {
      G(b, a) = G(a, b);
    }
  }
  return G;
}

}  // namespace par

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sigcomp
