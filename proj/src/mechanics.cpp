#include "warpfib/mechanics.hpp"

#include <cmath>

namespace warpfib {

DeformationState deformation_state(const Mat3& du_dX) {
    DeformationState s;
    s.F = Mat3::Identity() + du_dX;
    s.C = s.F.transpose() * s.F;
    s.J = s.F.determinant();
    return s;
}

Mat3 cofactor(const Mat3& F) {
    Mat3 c;
    c(0, 0) = F(1, 1) * F(2, 2) - F(1, 2) * F(2, 1);
    c(0, 1) = F(1, 2) * F(2, 0) - F(1, 0) * F(2, 2);
    c(0, 2) = F(1, 0) * F(2, 1) - F(1, 1) * F(2, 0);
    c(1, 0) = F(0, 2) * F(2, 1) - F(0, 1) * F(2, 2);
    c(1, 1) = F(0, 0) * F(2, 2) - F(0, 2) * F(2, 0);
    c(1, 2) = F(0, 1) * F(2, 0) - F(0, 0) * F(2, 1);
    c(2, 0) = F(0, 1) * F(1, 2) - F(0, 2) * F(1, 1);
    c(2, 1) = F(0, 2) * F(1, 0) - F(0, 0) * F(1, 2);
    c(2, 2) = F(0, 0) * F(1, 1) - F(0, 1) * F(1, 0);
    return c;
}

EnergyResult neo_hookean(const DeformationState& state, double lambda) {
    EnergyResult r;
    if (state.J <= 0.0) {
        r.value = kJacobianBarrierScale * (1.0 - state.J) * (1.0 - state.J);
        r.barrier = true;
        return r;
    }
    const double jm1 = state.J - 1.0;
    r.value = state.C.trace() - 3.0 - 2.0 * std::log(state.J) + lambda * jm1 * jm1;
    return r;
}

EnergyResult neo_hookean_grad(const DeformationState& state, double lambda, Mat3& dW_dF) {
    EnergyResult r;
    const Mat3 cof = cofactor(state.F);
    if (state.J <= 0.0) {
        const double jm1 = 1.0 - state.J;
        r.value = kJacobianBarrierScale * jm1 * jm1;
        r.barrier = true;
        dW_dF = -2.0 * kJacobianBarrierScale * jm1 * cof;
        return r;
    }
    const double jm1 = state.J - 1.0;
    r.value = state.C.trace() - 3.0 - 2.0 * std::log(state.J) + lambda * jm1 * jm1;
    dW_dF = 2.0 * state.F + (2.0 * lambda * jm1 - 2.0 / state.J) * cof;
    return r;
}

double fiber_stretch(const DeformationState& state, const Vec3& f) {
    if (std::abs(f.norm() - 1.0) > 1e-6) throw DataError("fiber direction must be unit length");
    return (state.F * f).squaredNorm();
}

double fiber_penalty(double lambda_f2) {
    if (lambda_f2 <= 1.0) return 0.0;
    const double d = lambda_f2 - 1.0;
    return d * d;
}

double fiber_penalty_grad(double lambda_f2) {
    return lambda_f2 <= 1.0 ? 0.0 : 2.0 * (lambda_f2 - 1.0);
}

double fiber_penalty_from_F(const Mat3& F, const Vec3& f, Mat3* dP_dF) {
    const Vec3 Ff = F * f;
    const double l2 = Ff.squaredNorm();
    if (dP_dF) {
        const double dp = fiber_penalty_grad(l2);
        *dP_dF = dp == 0.0 ? Mat3::Zero() : Mat3(2.0 * dp * Ff * f.transpose());
    }
    return fiber_penalty(l2);
}

Mat3 lagrange_strain(const DeformationState& state) {
    return 0.5 * (state.C - Mat3::Identity());
}

std::optional<StrainComponents> strain_components(const Mat3& E, const Vec3& n) {
    const Vec3 l(0, 0, 1);
    Vec3 r = n - n.dot(l) * l;
    const double rn = r.norm();
    if (rn < 1e-8) return std::nullopt;
    r /= rn;
    const Vec3 c = l.cross(r);
    return StrainComponents{l.dot(E * l), r.dot(E * r), c.dot(E * c)};
}

}  // namespace warpfib
