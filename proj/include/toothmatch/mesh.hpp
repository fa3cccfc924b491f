#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "toothmatch/common.hpp"

namespace toothmatch {

// Squared-area threshold below which a face counts as degenerate.
constexpr double kDegenerateAreaSq = 1e-12;

constexpr std::size_t kMaxFaces = 200000;

// Triangle mesh with per-face class labels (0 = gingiva, 1..16 = teeth) and
// per-face instance ids (-1 = background). Immutable after validation; safe
// to share read-only across workers.
struct LabeledMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;
    std::vector<int> face_labels;
    std::vector<int> face_instance_ids;
    Jaw jaw = Jaw::Upper;

    std::size_t face_count() const { return faces.size(); }
    std::size_t vertex_count() const { return vertices.size(); }
};

struct SceneFrame {
    Vec3 bbox_min;
    Vec3 bbox_max;
    double diagonal = 0.0;
    Vec3 arch_axis{1.0, 0.0, 0.0}; // mesiodistal direction, canonically +x
};

struct FaceGeometry {
    std::vector<Vec3> face_centers;
    std::vector<Vec3> face_normals;
    std::vector<Vec3> vertex_normals;
};

inline double face_area_sq(const LabeledMesh& mesh, std::size_t f) {
    const auto& tri = mesh.faces[f];
    Vec3 a = mesh.vertices[tri[0]];
    Vec3 b = mesh.vertices[tri[1]];
    Vec3 c = mesh.vertices[tri[2]];
    Vec3 n = (b - a).cross(c - a);
    return 0.25 * n.norm2();
}

// Checks every LabeledMesh invariant; throws SchemaError / DegenerateError.
inline void validate_mesh(const LabeledMesh& mesh) {
    const std::size_t m = mesh.face_count();
    if (m == 0) throw SchemaError("mesh has no faces");
    if (m > kMaxFaces)
        throw SchemaError("mesh has " + std::to_string(m) + " faces, limit is " +
                          std::to_string(kMaxFaces));
    if (mesh.face_labels.size() != m)
        throw SchemaError("face_labels length " + std::to_string(mesh.face_labels.size()) +
                          " does not match face count " + std::to_string(m));
    if (mesh.face_instance_ids.size() != m)
        throw SchemaError("face_instance_ids length " +
                          std::to_string(mesh.face_instance_ids.size()) +
                          " does not match face count " + std::to_string(m));

    for (std::size_t f = 0; f < m; ++f) {
        const auto& tri = mesh.faces[f];
        for (int k = 0; k < 3; ++k)
            if (tri[k] >= mesh.vertex_count())
                throw SchemaError("face " + std::to_string(f) + " references vertex " +
                                  std::to_string(tri[k]) + " out of range");
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw DegenerateError("face " + std::to_string(f) + " has repeated vertices");
        if (face_area_sq(mesh, f) < kDegenerateAreaSq)
            throw DegenerateError("face " + std::to_string(f) + " is degenerate (area ~ 0)");
    }

    // label/instance consistency: gingiva <-> instance -1, one label per instance
    std::vector<int> instance_label;
    for (std::size_t f = 0; f < m; ++f) {
        int label = mesh.face_labels[f];
        int inst = mesh.face_instance_ids[f];
        if (label < 0 || label >= kNumClasses)
            throw SchemaError("face " + std::to_string(f) + " has label " +
                              std::to_string(label) + " outside 0..16");
        if (label == 0) {
            if (inst != -1)
                throw SchemaError("gingiva face " + std::to_string(f) +
                                  " must carry instance id -1, got " + std::to_string(inst));
            continue;
        }
        if (inst < 0)
            throw SchemaError("tooth face " + std::to_string(f) + " has background instance id");
        if (static_cast<std::size_t>(inst) >= instance_label.size())
            instance_label.resize(inst + 1, -1);
        if (instance_label[inst] == -1)
            instance_label[inst] = label;
        else if (instance_label[inst] != label)
            throw SchemaError("instance " + std::to_string(inst) +
                              " carries labels " + std::to_string(instance_label[inst]) +
                              " and " + std::to_string(label));
    }
}

inline FaceGeometry compute_geometry(const LabeledMesh& mesh) {
    const std::size_t m = mesh.face_count();
    FaceGeometry geom;
    geom.face_centers.resize(m);
    geom.face_normals.resize(m);
    geom.vertex_normals.assign(mesh.vertex_count(), Vec3{});

    for (std::size_t f = 0; f < m; ++f) {
        const auto& tri = mesh.faces[f];
        Vec3 a = mesh.vertices[tri[0]];
        Vec3 b = mesh.vertices[tri[1]];
        Vec3 c = mesh.vertices[tri[2]];
        Vec3 cross = (b - a).cross(c - a);
        double area_sq = 0.25 * cross.norm2();
        if (area_sq < kDegenerateAreaSq)
            throw DegenerateError("face " + std::to_string(f) + " is degenerate (area ~ 0)");
        geom.face_centers[f] = (a + b + c) * (1.0 / 3.0);
        geom.face_normals[f] = normalized(cross);
        // area weight = |cross|/2; accumulate unnormalized
        Vec3 weighted = cross * 0.5;
        for (int k = 0; k < 3; ++k) geom.vertex_normals[tri[k]] += weighted;
    }
    for (auto& n : geom.vertex_normals) n = normalized(n);
    return geom;
}

inline SceneFrame scene_frame(const LabeledMesh& mesh) {
    if (mesh.vertex_count() == 0) throw SchemaError("mesh has no vertices");
    SceneFrame frame;
    frame.bbox_min = frame.bbox_max = mesh.vertices[0];
    for (const Vec3& v : mesh.vertices) {
        frame.bbox_min.x = std::min(frame.bbox_min.x, v.x);
        frame.bbox_min.y = std::min(frame.bbox_min.y, v.y);
        frame.bbox_min.z = std::min(frame.bbox_min.z, v.z);
        frame.bbox_max.x = std::max(frame.bbox_max.x, v.x);
        frame.bbox_max.y = std::max(frame.bbox_max.y, v.y);
        frame.bbox_max.z = std::max(frame.bbox_max.z, v.z);
    }
    frame.diagonal = (frame.bbox_max - frame.bbox_min).norm();
    if (frame.diagonal <= 0.0)
        throw DegenerateError("mesh has zero spatial extent (all vertices identical)");
    return frame;
}

} // namespace toothmatch
