#include "sigcomp/model.hpp"

#include "sigcomp/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sigcomp {

NetworkShape::NetworkShape(int d, int q) : d_(d), q_(q) {
  if (d < 1 || q < 1) {
    throw std::invalid_argument("NetworkShape: d and q must be >= 1 (got d=" +
                                std::to_string(d) + ", q=" + std::to_string(q) +
                                ")");
  }
}

double sigmoid(double a) {
  if (a >= 0.0) {
    return 1.0 / (1.0 + std::exp(-a));
  }
  const double e = std::exp(a);
  return e / (1.0 + e);
}

void check_params(const NetworkShape& shape, const ParamVector& theta) {
  if (theta.size() != shape.n()) {
    throw std::invalid_argument("parameter vector has length " +
                                std::to_string(theta.size()) + ", expected " +
                                std::to_string(shape.n()));
  }
  if (!theta.allFinite()) {
    throw std::invalid_argument("parameter vector has non-finite entries");
  }
}

namespace {

void check_input(const NetworkShape& shape, Eigen::Index len) {
  if (len != shape.d()) {
    throw std::invalid_argument("input has dimension " + std::to_string(len) +
                                ", expected " + std::to_string(shape.d()));
  }
}

void check_training_set(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss) {
  check_params(shape, theta);
  check_input(shape, inputs.cols());
  if (inputs.rows() != targets.size()) {
    throw std::invalid_argument("inputs have " + std::to_string(inputs.rows()) +
                                " rows but there are " +
                                std::to_string(targets.size()) + " targets");
  }
  if (loss == LossKind::Hinge) {
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      if (targets[i] != 1.0 && targets[i] != -1.0) {
        throw std::invalid_argument("hinge loss needs targets in {-1,+1}; target " +
                                    std::to_string(i) + " is " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

}  // namespace

double forward(const ParamVector& theta, const NetworkShape& shape,
               const Eigen::Ref<const Vector>& x) {
  check_params(shape, theta);
  check_input(shape, x.size());
  const int d = shape.d();
  double f = theta[shape.bias_offset()];
  for (int j = 0; j < shape.q(); ++j) {
    const double a =
        theta.segment(shape.v_offset() + j * d, d).dot(x) + theta[shape.u_offset() + j];
    f += theta[shape.w_offset() + j] * sigmoid(a);
  }
  return f;
}

Vector grad_forward(const ParamVector& theta, const NetworkShape& shape,
                    const Eigen::Ref<const Vector>& x) {
  check_params(shape, theta);
  check_input(shape, x.size());
  const int d = shape.d();
  Vector g(shape.n());
  for (int j = 0; j < shape.q(); ++j) {
    const double a =
        theta.segment(shape.v_offset() + j * d, d).dot(x) + theta[shape.u_offset() + j];
    const double s = sigmoid(a);
    const double ws = theta[shape.w_offset() + j] * s * (1.0 - s);
    g[shape.w_offset() + j] = s;
    g.segment(shape.v_offset() + j * d, d) = ws * x;
    g[shape.u_offset() + j] = ws;
  }
  g[shape.bias_offset()] = 1.0;
  return g;
}

Vector predict(const ParamVector& theta, const NetworkShape& shape,
               const Matrix& inputs) {
  check_params(shape, theta);
  check_input(shape, inputs.cols());
  Vector out(inputs.rows());
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    out[i] = forward(theta, shape, inputs.row(i).transpose());
  }
  return out;
}

ResidualEval inner_eval(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss) {
  check_training_set(theta, shape, inputs, targets, loss);
  ResidualEval eval;
  par::assemble_residuals(theta, shape, inputs, targets, loss, eval.F, &eval.J);
  return eval;
}

Vector inner_value(const ParamVector& theta, const NetworkShape& shape,
                   const Matrix& inputs, const Vector& targets, LossKind loss) {
  check_training_set(theta, shape, inputs, targets, loss);
  Vector F;
  par::assemble_residuals(theta, shape, inputs, targets, loss, F, nullptr);
  return F;
}

}  // namespace sigcomp
