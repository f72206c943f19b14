#include "warpfib/volume.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "warpfib/rng.hpp"

namespace warpfib {

using nlohmann::json;
namespace fs = std::filesystem;

void Volume3D::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 2) throw DataError("volume dims must be >= 2 per axis");
        if (!(spacing[a] > 0.0)) throw DataError("volume spacing must be > 0");
    }
    if (intensities.size() != voxel_count())
        throw DataError("intensity array length does not match dims");
    for (float v : intensities)
        if (!std::isfinite(v)) throw DataError("volume contains non-finite intensity");
}

namespace {

struct CellLocation {
    int i0[3];
    double f[3];  // fractional position within the cell, in [0,1]
    bool clamped[3];
};

CellLocation locate(const Volume3D& vol, const Vec3& p) {
    CellLocation loc;
    for (int a = 0; a < 3; ++a) {
        double v = (p[a] - vol.origin[a]) / vol.spacing[a];
        loc.clamped[a] = false;
        if (v <= 0.0) {
            v = 0.0;
            loc.clamped[a] = true;
        } else if (v >= vol.dims[a] - 1) {
            v = vol.dims[a] - 1;
            loc.clamped[a] = true;
        }
        int i = static_cast<int>(std::floor(v));
        i = std::min(i, vol.dims[a] - 2);
        loc.i0[a] = i;
        loc.f[a] = v - i;
    }
    return loc;
}

}  // namespace

double trilinear_sample(const Volume3D& vol, const Vec3& p) {
    const CellLocation loc = locate(vol, p);
    const double fx = loc.f[0], fy = loc.f[1], fz = loc.f[2];
    const int i = loc.i0[0], j = loc.i0[1], k = loc.i0[2];

    const double c000 = vol.at(i, j, k), c100 = vol.at(i + 1, j, k);
    const double c010 = vol.at(i, j + 1, k), c110 = vol.at(i + 1, j + 1, k);
    const double c001 = vol.at(i, j, k + 1), c101 = vol.at(i + 1, j, k + 1);
    const double c011 = vol.at(i, j + 1, k + 1), c111 = vol.at(i + 1, j + 1, k + 1);

    const double c00 = c000 + fx * (c100 - c000);
    const double c10 = c010 + fx * (c110 - c010);
    const double c01 = c001 + fx * (c101 - c001);
    const double c11 = c011 + fx * (c111 - c011);
    const double c0 = c00 + fy * (c10 - c00);
    const double c1 = c01 + fy * (c11 - c01);
    return c0 + fz * (c1 - c0);
}

void trilinear_sample_grad(const Volume3D& vol, const Vec3& p, double& value, Vec3& grad) {
    const CellLocation loc = locate(vol, p);
    const double fx = loc.f[0], fy = loc.f[1], fz = loc.f[2];
    const int i = loc.i0[0], j = loc.i0[1], k = loc.i0[2];

    const double c000 = vol.at(i, j, k), c100 = vol.at(i + 1, j, k);
    const double c010 = vol.at(i, j + 1, k), c110 = vol.at(i + 1, j + 1, k);
    const double c001 = vol.at(i, j, k + 1), c101 = vol.at(i + 1, j, k + 1);
    const double c011 = vol.at(i, j + 1, k + 1), c111 = vol.at(i + 1, j + 1, k + 1);

    const double gx = (1 - fy) * ((1 - fz) * (c100 - c000) + fz * (c101 - c001)) +
                      fy * ((1 - fz) * (c110 - c010) + fz * (c111 - c011));
    const double gy = (1 - fx) * ((1 - fz) * (c010 - c000) + fz * (c011 - c001)) +
                      fx * ((1 - fz) * (c110 - c100) + fz * (c111 - c101));
    const double gz = (1 - fx) * ((1 - fy) * (c001 - c000) + fy * (c011 - c010)) +
                      fx * ((1 - fy) * (c101 - c100) + fy * (c111 - c110));

    const double c00 = c000 + fx * (c100 - c000);
    const double c10 = c010 + fx * (c110 - c010);
    const double c01 = c001 + fx * (c101 - c001);
    const double c11 = c011 + fx * (c111 - c011);
    const double c0 = c00 + fy * (c10 - c00);
    const double c1 = c01 + fy * (c11 - c01);
    value = c0 + fz * (c1 - c0);

    for (int a = 0; a < 3; ++a) grad[a] = 0.0;
    if (!loc.clamped[0]) grad[0] = gx / vol.spacing[0];
    if (!loc.clamped[1]) grad[1] = gy / vol.spacing[1];
    if (!loc.clamped[2]) grad[2] = gz / vol.spacing[2];
}

Volume3D add_gaussian_noise(const Volume3D& vol, double sigma, uint64_t seed) {
    if (sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
    Volume3D out = vol;
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (auto& v : out.intensities)
        v = static_cast<float>(static_cast<double>(v) + rng.normal(0.0, sigma));
    return out;
}

namespace {

std::string raw_path_for(const std::string& json_path, const json& header) {
    fs::path base(json_path);
    if (header.contains("raw")) return (base.parent_path() / header.at("raw").get<std::string>()).string();
    fs::path p = base;
    p.replace_extension();          // drop .json
    if (p.extension() == ".vol") p.replace_extension();
    p += ".vol.raw";
    return p.string();
}

}  // namespace

Volume3D read_volume(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open volume header: " + path);
    json header;
    try {
        header = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("malformed volume header " + path + ": " + e.what());
    }

    Volume3D vol;
    try {
        auto d = header.at("dims");
        vol.dims = {d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
        auto s = header.at("spacing");
        vol.spacing = {s.at(0).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()};
        auto o = header.at("origin");
        vol.origin = {o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>()};
    } catch (const json::exception& e) {
        throw DataError("malformed volume header " + path + ": " + e.what());
    }
    const std::string dtype = header.value("dtype", "f32");
    if (dtype != "f32") throw DataError("unknown dtype '" + dtype + "' in " + path);
    const std::string order = header.value("order", "x-fastest");
    if (order != "x-fastest") throw DataError("unknown order '" + order + "' in " + path);

    const std::string rawp = raw_path_for(path, header);
    std::ifstream raw(rawp, std::ios::binary);
    if (!raw) throw DataError("cannot open raw file: " + rawp);
    raw.seekg(0, std::ios::end);
    const std::size_t bytes = static_cast<std::size_t>(raw.tellg());
    raw.seekg(0);
    const std::size_t expect = static_cast<std::size_t>(vol.dims[0]) * vol.dims[1] * vol.dims[2];
    if (bytes != expect * sizeof(float))
        throw DataError("raw size mismatch for " + path + ": got " + std::to_string(bytes / sizeof(float)) +
                        " scalars, header dims imply " + std::to_string(expect));
    vol.intensities.resize(expect);
    raw.read(reinterpret_cast<char*>(vol.intensities.data()), bytes);
    if (!raw) throw DataError("short read on raw file: " + rawp);
    vol.validate();
    return vol;
}

void write_volume(const Volume3D& vol, const std::string& path) {
    vol.validate();
    fs::path jp(path);
    fs::path rp = jp;
    rp.replace_extension();
    if (rp.extension() == ".vol") rp.replace_extension();
    rp += ".vol.raw";

    json header = {
        {"dims", {vol.dims[0], vol.dims[1], vol.dims[2]}},
        {"spacing", {vol.spacing.x(), vol.spacing.y(), vol.spacing.z()}},
        {"origin", {vol.origin.x(), vol.origin.y(), vol.origin.z()}},
        {"dtype", "f32"},
        {"order", "x-fastest"},
        {"raw", rp.filename().string()},
    };
    std::ofstream out(path);
    if (!out) throw DataError("cannot write volume header: " + path);
    out << header.dump(2) << "\n";

    std::ofstream raw(rp, std::ios::binary);
    if (!raw) throw DataError("cannot write raw file: " + rp.string());
    raw.write(reinterpret_cast<const char*>(vol.intensities.data()),
              static_cast<std::streamsize>(vol.intensities.size() * sizeof(float)));
}

void FrameSequence::validate() const {
    if (frames.empty()) throw DataError("frame sequence is empty");
    if (frames.size() != times.size()) throw DataError("frame/time count mismatch");
    if (times.front() != 0.0) throw DataError("first frame time must be 0");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw DataError("frame times must be strictly increasing");
    for (const auto& f : frames) {
        f.validate();
        if (f.dims != frames[0].dims || f.spacing != frames[0].spacing ||
            f.origin != frames[0].origin)
            throw DataError("all frames must share dims/spacing/origin");
    }
}

FrameSequence read_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sequence manifest: " + path);
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("malformed sequence manifest " + path + ": " + e.what());
    }
    FrameSequence seq;
    const fs::path dir = fs::path(path).parent_path();
    for (const auto& entry : manifest.at("frames")) {
        seq.times.push_back(entry.at("t").get<double>());
        seq.frames.push_back(read_volume((dir / entry.at("path").get<std::string>()).string()));
    }
    seq.validate();
    return seq;
}

void write_sequence(const FrameSequence& seq, const std::string& path,
                    const std::string& frame_basename) {
    seq.validate();
    const fs::path dir = fs::path(path).parent_path();
    json frames = json::array();
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const std::string name = frame_basename + "_" + std::to_string(i) + ".vol.json";
        write_volume(seq.frames[i], (dir / name).string());
        frames.push_back({{"t", seq.times[i]}, {"path", name}});
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write sequence manifest: " + path);
    out << json{{"frames", frames}}.dump(2) << "\n";
}

}  // namespace warpfib
