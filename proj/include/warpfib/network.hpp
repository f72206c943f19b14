#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "warpfib/common.hpp"

namespace warpfib {

/// Fourier feature mapping gamma(X) = [cos(BX); sin(BX)], B in R^{m x 3} with
/// entries drawn N(0, sigma^2) once at construction and frozen thereafter.
struct FourierMap {
    Eigen::MatrixXd B;  // m x 3
    double sigma = 1.0;

    int m() const { return static_cast<int>(B.rows()); }
};

FourierMap make_fourier_map(int m, double sigma, uint64_t seed);

/// Encodes a (pre-normalized) coordinate; output length 2m, components in [-1,1].
Eigen::VectorXd ffm_encode(const FourierMap& map, const Vec3& X);

/// Fourier-feature MLP mapping (t, X) -> displacement u_hat in mm.
///
/// Spatial coordinates are affinely normalized to [-1,1]^3 over `norm_box`
/// before encoding, keeping sigma comparable across datasets. Time, when
/// enabled, enters as a raw scalar appended after the Fourier features.
/// Hidden activation is tanh; the output layer is linear with dimension 3.
struct CoordNet {
    FourierMap ffm;
    bool with_time = false;
    Box3 norm_box;
    std::vector<int> widths;        // [input_dim, hidden..., 3]
    std::vector<double> params;     // W1 | b1 | W2 | b2 | ... (W column-major)
    uint64_t init_seed = 0;

    struct Layer {
        int in, out;
        std::size_t w_off, b_off;
    };
    std::vector<Layer> layers;
    std::size_t param_count = 0;

    /// Rebuilds the layer table from `widths`; call after any shape change.
    void finalize();

    int input_dim() const { return 2 * ffm.m() + (with_time ? 1 : 0); }
    int hidden_layer_count() const { return static_cast<int>(widths.size()) - 2; }

    Eigen::Map<const Eigen::MatrixXd> weight(int k) const {
        const Layer& l = layers[k];
        return {params.data() + l.w_off, l.out, l.in};
    }
    Eigen::Map<const Eigen::VectorXd> bias(int k) const {
        const Layer& l = layers[k];
        return {params.data() + l.b_off, l.out};
    }

    Vec3 normalize_point(const Vec3& X) const {
        return 2.0 * (X - norm_box.lo).cwiseQuotient(norm_box.extent()) - Vec3::Ones();
    }
    /// d(normalized)/dX, diagonal.
    Vec3 norm_scale() const { return 2.0 * norm_box.extent().cwiseInverse(); }
};

/// Weights ~ U(+-sqrt(6/(fan_in+fan_out))), biases zero, B ~ N(0, sigma^2);
/// everything drawn from streams derived from `seed`.
CoordNet xavier_init(int m, double sigma, int hidden_layers, int width, bool with_time,
                     const Box3& norm_box, uint64_t seed);

/// Displacement at (t, X). Pure; t is ignored for time-independent nets.
Vec3 net_forward(const CoordNet& net, double t, const Vec3& X);

/// Exact spatial derivative du_hat/dX (through the Fourier map and the
/// coordinate normalization), consistent with net_forward to machine precision.
Mat3 net_spatial_jacobian(const CoordNet& net, double t, const Vec3& X);

void net_forward_jacobian(const CoordNet& net, double t, const Vec3& X, Vec3& u, Mat3& du_dX);

/// Gradient of the scalar loss sum_j (ubar_j . u_j + gbar_j : du_dX_j) with
/// respect to theta; the adjoint seeds define the loss. Exact, including the
/// mixed d(du/dX)/d(theta) terms the regularizers need.
std::vector<double> net_param_gradients(const CoordNet& net, const Eigen::Matrix3Xd& points,
                                        const Eigen::VectorXd* times,
                                        const Eigen::Matrix3Xd& ubar,
                                        const std::vector<Mat3>* gbar);

/// Checkpoint: JSON metadata next to a little-endian f64 blob holding B and
/// the flat parameter vector, so checkpoints are portable across machines.
void save_checkpoint(const CoordNet& net, const std::string& path);
CoordNet load_checkpoint(const std::string& path);

}  // namespace warpfib
