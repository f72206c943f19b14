#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "warpfib/common.hpp"

namespace warpfib {

/// Scalar 3D image on a regular grid, x-fastest memory order.
///
/// Voxel (i,j,k) sits at origin + (i*dx, j*dy, k*dz) in physical (mm) space.
/// Intensities are stored as f32 to match the on-disk dtype bit for bit;
/// all sampling arithmetic is carried out in double.
struct Volume3D {
    std::array<int, 3> dims{0, 0, 0};
    Vec3 spacing{1, 1, 1};
    Vec3 origin{0, 0, 0};
    std::vector<float> intensities;

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) * (static_cast<std::size_t>(j) +
                                                    static_cast<std::size_t>(dims[1]) * k);
    }
    float& at(int i, int j, int k) { return intensities[index(i, j, k)]; }
    float at(int i, int j, int k) const { return intensities[index(i, j, k)]; }

    Vec3 voxel_center(int i, int j, int k) const {
        return origin + Vec3(i * spacing.x(), j * spacing.y(), k * spacing.z());
    }
    /// Physical bounding box spanned by the voxel centers.
    Box3 bounds() const {
        return {origin, origin + Vec3((dims[0] - 1) * spacing.x(), (dims[1] - 1) * spacing.y(),
                                      (dims[2] - 1) * spacing.z())};
    }

    /// dims >= 2 per axis, spacing > 0, intensities finite and sized to dims.
    void validate() const;
};

/// Trilinear interpolation at a physical point. Points outside the grid clamp
/// to the boundary voxel layer, so warped queries that land outside the image
/// stay defined.
double trilinear_sample(const Volume3D& vol, const Vec3& p);

/// Value and spatial gradient of the trilinear interpolant at p (mm^-1).
/// The gradient is the exact derivative of the interpolant; it is piecewise
/// constant per cell along each axis and zero in clamped directions.
void trilinear_sample_grad(const Volume3D& vol, const Vec3& p, double& value, Vec3& grad);

/// Per-voxel i.i.d. N(0, sigma^2) perturbation from a seeded stream.
Volume3D add_gaussian_noise(const Volume3D& vol, double sigma, uint64_t seed);

/// `.vol.json` header + little-endian f32 `.vol.raw` pair. `path` names the
/// JSON file; the raw file sits next to it.
Volume3D read_volume(const std::string& path);
void write_volume(const Volume3D& vol, const std::string& path);

/// Ordered frames sharing one grid, with normalized times in [0,1].
struct FrameSequence {
    std::vector<Volume3D> frames;
    std::vector<double> times;

    const Volume3D& reference() const { return frames.front(); }
    std::size_t frame_count() const { return frames.size(); }
    /// Strictly increasing times starting at 0, matching grids across frames.
    void validate() const;
};

/// `.seq.json` manifest: {"frames": [{"t": 0.0, "path": "..."}, ...]}.
/// Frame paths are resolved relative to the manifest location.
FrameSequence read_sequence(const std::string& path);
void write_sequence(const FrameSequence& seq, const std::string& path,
                    const std::string& frame_basename = "frame");

}  // namespace warpfib
