#pragma once

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "toothmatch/mesh.hpp"

namespace toothmatch {

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("malformed JSON in " + path.string());
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

// %.9g keeps float32-sourced values exact through a text round trip.
inline std::string format_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace detail

// ---------------------------------------------------------------------------
// OBJ (ASCII subset: v/f records, 1-based indices, triangles only)
// ---------------------------------------------------------------------------

inline void save_obj(const LabeledMesh& mesh, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const Vec3& v : mesh.vertices)
        out << "v " << detail::format_coord(v.x) << ' ' << detail::format_coord(v.y) << ' '
            << detail::format_coord(v.z) << '\n';
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    detail::write_text_file(path, out.str());
}

inline void load_obj_into(LabeledMesh& mesh, const std::filesystem::path& path) {
    std::string text = detail::read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z))
                throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed vertex record");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<std::uint32_t, 3> tri{};
            std::string tok;
            int n = 0;
            while (ls >> tok) {
                if (n >= 3)
                    throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                                      ": only triangles are supported");
                // tolerate v/vt/vn forms; the index before the first slash counts
                std::size_t slash = tok.find('/');
                if (slash != std::string::npos) tok = tok.substr(0, slash);
                long idx = 0;
                try {
                    idx = std::stol(tok);
                } catch (const std::exception&) {
                    throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                                      ": malformed face index \"" + tok + "\"");
                }
                if (idx < 1)
                    throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                                      ": face indices must be positive (1-based)");
                tri[n++] = static_cast<std::uint32_t>(idx - 1);
            }
            if (n != 3)
                throw SchemaError(path.string() + ":" + std::to_string(lineno) +
                                  ": face record needs exactly 3 indices");
            mesh.faces.push_back(tri);
        }
        // other record types (vn, vt, usemtl, ...) are ignored
    }
    if (mesh.faces.empty())
        throw SchemaError(path.string() + ": no faces found");
}

// ---------------------------------------------------------------------------
// PLY (binary little-endian: float32 vertex x,y,z; uchar count + int32 indices)
// ---------------------------------------------------------------------------

inline void save_ply(const LabeledMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "ply\nformat binary_little_endian 1.0\n";
    out << "element vertex " << mesh.vertex_count() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "element face " << mesh.face_count() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    for (const Vec3& v : mesh.vertices) {
        float xyz[3] = {static_cast<float>(v.x), static_cast<float>(v.y),
                        static_cast<float>(v.z)};
        out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
    for (const auto& f : mesh.faces) {
        unsigned char count = 3;
        std::int32_t idx[3] = {static_cast<std::int32_t>(f[0]), static_cast<std::int32_t>(f[1]),
                               static_cast<std::int32_t>(f[2])};
        out.write(reinterpret_cast<const char*>(&count), 1);
        out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
    }
    if (!out) throw IoError("write failed for " + path.string());
}

inline void load_ply_into(LabeledMesh& mesh, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != "ply")
        throw SchemaError(path.string() + ": not a PLY file");

    std::size_t vertex_count = 0, face_count = 0;
    bool in_vertex = false, in_face = false;
    int vertex_props = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "comment") continue;
        if (tag == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt != "binary_little_endian")
                throw SchemaError(path.string() + ": only binary_little_endian PLY is supported");
        } else if (tag == "element") {
            std::string name;
            std::size_t count = 0;
            ls >> name >> count;
            in_vertex = name == "vertex";
            in_face = name == "face";
            if (in_vertex) vertex_count = count;
            if (in_face) face_count = count;
            if (!in_vertex && !in_face)
                throw SchemaError(path.string() + ": unsupported element \"" + name + "\"");
        } else if (tag == "property") {
            std::string a, b;
            ls >> a >> b;
            if (in_vertex) {
                if (a != "float")
                    throw SchemaError(path.string() + ": vertex properties must be float32");
                ++vertex_props;
            } else if (in_face) {
                if (a != "list" || b != "uchar")
                    throw SchemaError(path.string() + ": face property must be list uchar int");
            }
        } else if (tag == "end_header") {
            header_done = true;
            break;
        } else {
            throw SchemaError(path.string() + ": unexpected header line \"" + line + "\"");
        }
    }
    if (!header_done) throw SchemaError(path.string() + ": truncated PLY header");
    if (vertex_props != 3)
        throw SchemaError(path.string() + ": expected exactly 3 float vertex properties");

    mesh.vertices.resize(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) {
        float xyz[3];
        if (!in.read(reinterpret_cast<char*>(xyz), sizeof(xyz)))
            throw SchemaError(path.string() + ": truncated vertex data");
        mesh.vertices[i] = {xyz[0], xyz[1], xyz[2]};
    }
    mesh.faces.resize(face_count);
    for (std::size_t i = 0; i < face_count; ++i) {
        unsigned char count = 0;
        if (!in.read(reinterpret_cast<char*>(&count), 1))
            throw SchemaError(path.string() + ": truncated face data");
        if (count != 3)
            throw SchemaError(path.string() + ": face " + std::to_string(i) +
                              " has " + std::to_string(int(count)) + " indices, only triangles");
        std::int32_t idx[3];
        if (!in.read(reinterpret_cast<char*>(idx), sizeof(idx)))
            throw SchemaError(path.string() + ": truncated face data");
        for (int k = 0; k < 3; ++k) {
            if (idx[k] < 0)
                throw SchemaError(path.string() + ": negative face index");
            mesh.faces[i][k] = static_cast<std::uint32_t>(idx[k]);
        }
    }
}

// ---------------------------------------------------------------------------
// Sidecar JSON + combined load/save
// ---------------------------------------------------------------------------

inline void save_sidecar(const LabeledMesh& mesh, const std::filesystem::path& path) {
    nlohmann::json j;
    j["jaw"] = to_string(mesh.jaw);
    j["face_labels"] = mesh.face_labels;
    j["face_instance_ids"] = mesh.face_instance_ids;
    detail::write_text_file(path, j.dump(2) + "\n");
}

inline void load_sidecar_into(LabeledMesh& mesh, const std::filesystem::path& path) {
    nlohmann::json j = detail::parse_json_file(path);
    if (!j.is_object() || !j.contains("jaw") || !j.contains("face_labels") ||
        !j.contains("face_instance_ids"))
        throw SchemaError(path.string() +
                          ": sidecar needs jaw, face_labels and face_instance_ids");
    if (!j["jaw"].is_string()) throw SchemaError(path.string() + ": jaw must be a string");
    mesh.jaw = jaw_from_string(j["jaw"].get<std::string>());
    try {
        mesh.face_labels = j["face_labels"].get<std::vector<int>>();
        mesh.face_instance_ids = j["face_instance_ids"].get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(path.string() + ": label arrays must be integer arrays");
    }
    if (mesh.face_labels.size() != mesh.face_count())
        throw SchemaError(path.string() + ": face_labels has " +
                          std::to_string(mesh.face_labels.size()) + " entries for " +
                          std::to_string(mesh.face_count()) + " faces");
    if (mesh.face_instance_ids.size() != mesh.face_count())
        throw SchemaError(path.string() + ": face_instance_ids has " +
                          std::to_string(mesh.face_instance_ids.size()) + " entries for " +
                          std::to_string(mesh.face_count()) + " faces");
}

// Loads mesh file (by extension: .obj or .ply) plus sidecar, validates everything.
inline LabeledMesh load_mesh(const std::filesystem::path& mesh_path,
                             const std::filesystem::path& sidecar_path) {
    LabeledMesh mesh;
    std::string ext = mesh_path.extension().string();
    if (ext == ".obj")
        load_obj_into(mesh, mesh_path);
    else if (ext == ".ply")
        load_ply_into(mesh, mesh_path);
    else
        throw SchemaError("unsupported mesh extension \"" + ext + "\" (use .obj or .ply)");
    load_sidecar_into(mesh, sidecar_path);
    validate_mesh(mesh);
    return mesh;
}

inline void save_mesh(const LabeledMesh& mesh, const std::filesystem::path& mesh_path,
                      const std::filesystem::path& sidecar_path) {
    std::string ext = mesh_path.extension().string();
    if (ext == ".obj")
        save_obj(mesh, mesh_path);
    else if (ext == ".ply")
        save_ply(mesh, mesh_path);
    else
        throw SchemaError("unsupported mesh extension \"" + ext + "\" (use .obj or .ply)");
    save_sidecar(mesh, sidecar_path);
}

} // namespace toothmatch
