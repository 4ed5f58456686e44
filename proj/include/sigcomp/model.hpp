#pragma once

#include <Eigen/Dense>

namespace sigcomp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Flat parameter vector laid out as [w(q) | v(q*d, neuron-major) | u(q) | w0].
using ParamVector = Eigen::VectorXd;

enum class LossKind { Quadratic, Absolute, Hinge };

/// Dimensions of a single-hidden-layer sigmoid network with scalar output.
class NetworkShape {
public:
  NetworkShape(int d, int q);

  int d() const { return d_; }
  int q() const { return q_; }
  int n() const { return (d_ + 2) * q_ + 1; }

  int w_offset() const { return 0; }
  int v_offset() const { return q_; }
  int u_offset() const { return q_ + q_ * d_; }
  int bias_offset() const { return n() - 1; }

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;

private:
  int d_;
  int q_;
};

/// Pair (F(theta), F'(theta)) for a training set of m samples.
struct ResidualEval {
  Vector F;
  Matrix J;

  int m() const { return static_cast<int>(F.size()); }
  int n() const { return static_cast<int>(J.cols()); }
};

double sigmoid(double a);

/// Throws std::invalid_argument if theta does not match the shape or is not finite.
void check_params(const NetworkShape& shape, const ParamVector& theta);

double forward(const ParamVector& theta, const NetworkShape& shape,
               const Eigen::Ref<const Vector>& x);

Vector grad_forward(const ParamVector& theta, const NetworkShape& shape,
                    const Eigen::Ref<const Vector>& x);

/// Network outputs for every row of `inputs`.
Vector predict(const ParamVector& theta, const NetworkShape& shape,
               const Matrix& inputs);

/// Inner map of the composite objective.
///
/// Quadratic/Absolute: F_i = f(x_i) - y_i, row i of J = grad f(x_i).
/// Hinge:              F_i = y_i f(x_i),   row i of J = y_i grad f(x_i).
/// Hinge targets must be +-1.
ResidualEval inner_eval(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss);

/// F only, without the Jacobian. Used by line searches.
Vector inner_value(const ParamVector& theta, const NetworkShape& shape,
                   const Matrix& inputs, const Vector& targets, LossKind loss);

}  // namespace sigcomp
