#pragma once

#include <optional>

#include "warpfib/common.hpp"

namespace warpfib {

/// Pointwise kinematics of a deformation map: F = I + du/dX, C = F^T F, J = det F.
struct DeformationState {
    Mat3 F;
    Mat3 C;
    double J;
};

DeformationState deformation_state(const Mat3& du_dX);

/// Large finite barrier substituted for the neo-Hookean energy when J <= 0,
/// where the log term is undefined. Keeps the optimizer alive instead of
/// propagating NaNs.
constexpr double kJacobianBarrierScale = 1e6;

struct EnergyResult {
    double value = 0.0;
    bool barrier = false;  // true when the J <= 0 barrier branch was taken
};

/// Neo-Hookean strain energy W = Tr(C) - 3 - 2 log(J) + lambda (J - 1)^2.
/// For J <= 0 returns the barrier 1e6 (1 - J)^2 with the flag set.
EnergyResult neo_hookean(const DeformationState& state, double lambda);

/// Energy plus its exact derivative with respect to F (same barrier handling).
EnergyResult neo_hookean_grad(const DeformationState& state, double lambda, Mat3& dW_dF);

/// Squared fiber stretch lambda_f^2 = C : f (x) f = |F f|^2. f must be unit.
double fiber_stretch(const DeformationState& state, const Vec3& f);

/// Clamp penalty (max{1, lambda_f^2} - 1)^2: zero under contraction, quadratic
/// under stretch, C^1 at lambda_f^2 = 1.
double fiber_penalty(double lambda_f2);
double fiber_penalty_grad(double lambda_f2);  // d penalty / d lambda_f2

/// Penalty evaluated through F with its derivative dP/dF = p'(l2) * 2 (F f) f^T.
double fiber_penalty_from_F(const Mat3& F, const Vec3& f, Mat3* dP_dF = nullptr);

/// Lagrange strain E = (C - I) / 2.
Mat3 lagrange_strain(const DeformationState& state);

/// Longitudinal/radial/circumferential strain components on the ventricular
/// surface. l = (0,0,1) fixed; r = normalize(n - (n.l) l); c = l x r.
/// Returns nothing when n is (numerically) parallel to l, in which case the
/// node must be excluded from regional averages.
struct StrainComponents {
    double ll, rr, cc;
};
std::optional<StrainComponents> strain_components(const Mat3& E, const Vec3& n);

/// Cofactor matrix of F (equals dJ/dF; J F^{-T} for invertible F, but stays
/// finite for singular F).
Mat3 cofactor(const Mat3& F);

}  // namespace warpfib
