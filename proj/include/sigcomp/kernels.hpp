#pragma once

// Data-parallel kernels behind the model and the subproblem solvers.
//
// Every kernel has an OpenMP version (namespace `par`) and a plain serial
// reference (namespace `ref`). The parallel versions split work so that each
// output entry is produced by exactly one thread with the same summation order
// as the reference, so results are bitwise identical to `ref` for any thread
// count.

#include "sigcomp/model.hpp"

namespace sigcomp {

namespace ref {

void assemble_residuals(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss, Vector& F, Matrix* J);

/// Upper and lower triangle of J^T J.
Matrix gram(const Matrix& J);

}  // namespace ref

namespace par {

void assemble_residuals(const ParamVector& theta, const NetworkShape& shape,
                        const Matrix& inputs, const Vector& targets,
                        LossKind loss, Vector& F, Matrix* J);

Matrix gram(const Matrix& J);

}  // namespace par

/// Number of OpenMP threads the `par` kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace sigcomp
