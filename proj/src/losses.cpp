#include "sigcomp/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sigcomp {

std::string_view to_string(LossKind loss) {
  switch (loss) {
    case LossKind::Quadratic: return "quadratic";
    case LossKind::Absolute: return "absolute";
    case LossKind::Hinge: return "hinge";
  }
  return "unknown";
}

LossKind parse_loss(std::string_view name) {
  if (name == "quadratic") return LossKind::Quadratic;
  if (name == "absolute") return LossKind::Absolute;
  if (name == "hinge") return LossKind::Hinge;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

double scalar_loss(double z, LossKind loss) {
  switch (loss) {
    case LossKind::Quadratic: return z * z;
    case LossKind::Absolute: return std::abs(z);
    case LossKind::Hinge: return std::max(1.0 - z, 0.0);
  }
  return 0.0;
}

double outer_value(const Eigen::Ref<const Vector>& z, LossKind loss) {
  if (z.size() == 0) {
    throw std::invalid_argument("outer_value: empty residual vector");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    acc += scalar_loss(z[i], loss);
  }
  return acc / static_cast<double>(z.size());
}

double prox(double a, double kappa, LossKind loss) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("prox: kappa must be > 0");
  }
  switch (loss) {
    case LossKind::Absolute:
      if (a > kappa) return a - kappa;
      if (a < -kappa) return a + kappa;
      return 0.0;
    case LossKind::Hinge:
      if (a > 1.0) return a;
      if (a < 1.0 - kappa) return a + kappa;
      return 1.0;
    case LossKind::Quadratic:
      break;
  }
  throw std::invalid_argument("prox: quadratic loss has no prox path; use lm_step");
}

bool in_minimizer_set(const Eigen::Ref<const Vector>& z, LossKind loss,
                      double tol) {
  if (z.size() == 0) {
    return true;
  }
  if (loss == LossKind::Hinge) {
    return z.minCoeff() >= 1.0 - tol;
  }
  return z.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace sigcomp
