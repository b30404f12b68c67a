/// @file derham.hpp
/// @brief The discrete de Rham complex on uniform periodic tensor grids:
///        derivative matrices (gradient, curl, divergence), diagonal Hodge
///        duality matrices, and the reduction/interpolation operators that
///        connect continuous fields to coefficient vectors.
///
/// All derivative matrices are built from the circulant forward-difference
/// stencil d0 (row i: -1 at i, +1 at i+1 mod n) via Kronecker structure, so
/// curl(grad u) and, in 3D, div(curl w) cancel exactly.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "westv/linear_op.hpp"
#include "westv/mesh.hpp"

namespace westv {

using ScalarField = std::function<double(const Vec3&)>;

/// One component of a vector field, optionally with a closed-form
/// antiderivative along its own axis (d/dx_a antiderivative == value).  When
/// present, edge integrals use the fundamental theorem of calculus; otherwise
/// adaptive Gauss quadrature at relative tolerance 1e-12.
struct FieldComponent {
    ScalarField value;
    ScalarField antiderivative;  // may be empty
};

// ---- derivative matrices -------------------------------------------------

LinearOp build_d0_1d(int n);
LinearOp build_gradient(const TensorGrid& grid);
/// 2D: scalar curl (1-forms -> top forms), C = (I (x) d0, -d0 (x) I).
/// 3D: vector curl (1-forms -> 2-forms).  Rejects dim == 1.
LinearOp build_curl(const TensorGrid& grid);
/// 3D divergence (2-forms -> 3-forms), D = -G^T.
LinearOp build_divergence(const TensorGrid& grid);

// ---- duality matrices ----------------------------------------------------

/// Diagonal Hodge matrix for the given form degree (tensor products of the
/// 1D h0 = dx*I and h1 = I/dx).
LinearOp build_hodge_diagonal(const TensorGrid& grid, int degree);

/// The 3-point "natural" 0-form duality stencil (dx/8)*(1 6 1); built and
/// tested but not used by the dynamics, which take the diagonal family.
LinearOp build_h0_natural_1d(int n, double dx);

/// Closed-form Gershgorin bound on ||H0^-1 G^T H1 G||: 4 * sum_a dx_a^-2.
double gershgorin_laplacian_bound(const TensorGrid& grid);

// ---- reduction (fields -> coefficients) ----------------------------------

FormCoefficients reduce_0form(const TensorGrid& grid, const ScalarField& f);
FormCoefficients reduce_1form(const TensorGrid& grid, const std::vector<FieldComponent>& F);
/// 3D only: face fluxes of a vector proxy (component a integrated over the
/// face normal to axis a).
FormCoefficients reduce_2form_3d(const TensorGrid& grid, const std::vector<ScalarField>& F);
/// Cell integrals of a scalar density (degree == dim).
FormCoefficients reduce_top_form(const TensorGrid& grid, const ScalarField& f);

// ---- interpolation (coefficients -> fields) ------------------------------

ScalarField interpolate_0form(const TensorGrid& grid, FormCoefficients coeffs);
std::function<Vec3(const Vec3&)> interpolate_1form(const TensorGrid& grid, FormCoefficients coeffs);
std::function<Vec3(const Vec3&)> interpolate_2form_3d(const TensorGrid& grid, FormCoefficients coeffs);
ScalarField interpolate_top_form(const TensorGrid& grid, FormCoefficients coeffs);

// ---- the bundled complex -------------------------------------------------

struct DeRhamComplex {
    TensorGrid grid;
    LinearOp G;
    std::optional<LinearOp> C;  // dim >= 2
    std::optional<LinearOp> D;  // dim == 3
    std::vector<LinearOp> hodge;  // hodge[degree], degree = 0..dim
    std::optional<LinearOp> h0_natural;  // 1D only

    const LinearOp& H(int degree) const { return hodge[static_cast<std::size_t>(degree)]; }
};

DeRhamComplex build_derham(const TensorGrid& grid);

}  // namespace westv
