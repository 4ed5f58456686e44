#pragma once

#include "sigcomp/model.hpp"

#include <string_view>

namespace sigcomp {

std::string_view to_string(LossKind loss);
/// Accepts "quadratic", "absolute", "hinge"; throws std::invalid_argument otherwise.
LossKind parse_loss(std::string_view name);

/// Per-component loss: z^2, |z| or (1 - z)_+.
double scalar_loss(double z, LossKind loss);

/// (1/m) * sum_i scalar_loss(z_i). Throws on empty input.
double outer_value(const Eigen::Ref<const Vector>& z, LossKind loss);

/// argmin_mu  kappa * scalar_loss(mu) + (mu - a)^2 / 2  for Absolute and Hinge.
///
/// Boundary points belong to the flat middle branch. Quadratic is rejected.
double prox(double a, double kappa, LossKind loss);

/// Membership of z in the minimizer set of the outer function, with slack `tol`.
/// Quadratic/Absolute: ||z||_inf <= tol. Hinge: min(z) >= 1 - tol.
bool in_minimizer_set(const Eigen::Ref<const Vector>& z, LossKind loss,
                      double tol);

}  // namespace sigcomp
