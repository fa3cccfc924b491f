#pragma once

#include <bit>
#include <filesystem>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "toothmatch/matrix.hpp"

namespace toothmatch {

static_assert(std::endian::native == std::endian::little,
              "tensor container payloads are little-endian; big-endian hosts are unsupported");

// Tensor container: one JSON header line, a newline, then the raw float32
// payload in row-major order. The header makes every file self-describing
// and auditable with head -1.
inline void save_tensor(const Matrix& m, const std::filesystem::path& path) {
    nlohmann::json header = {{"dtype", "f32"},
                             {"shape", {m.rows, m.cols}},
                             {"order", "row-major"},
                             {"endian", "little"}};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << header.dump() << '\n';
    std::vector<float> payload(m.data.begin(), m.data.end());
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out) throw IoError("write failed for " + path.string());
}

inline Matrix load_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string header_line;
    if (!std::getline(in, header_line))
        throw SchemaError(path.string() + ": missing tensor header");
    nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
    if (header.is_discarded() || !header.is_object())
        throw SchemaError(path.string() + ": malformed tensor header");
    if (header.value("dtype", "") != "f32")
        throw SchemaError(path.string() + ": unsupported dtype (expected f32)");
    if (header.value("order", "") != "row-major")
        throw SchemaError(path.string() + ": unsupported order (expected row-major)");
    if (header.value("endian", "") != "little")
        throw SchemaError(path.string() + ": unsupported endianness (expected little)");
    if (!header.contains("shape") || !header["shape"].is_array())
        throw SchemaError(path.string() + ": tensor header has no shape");
    auto shape = header["shape"].get<std::vector<std::size_t>>();
    std::size_t rows = 1, cols = 1;
    if (shape.size() == 1) {
        rows = 1;
        cols = shape[0];
    } else if (shape.size() == 2) {
        rows = shape[0];
        cols = shape[1];
    } else {
        throw SchemaError(path.string() + ": only rank-1/2 tensors are supported");
    }
    Matrix m(rows, cols);
    std::vector<float> payload(rows * cols);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != payload.size() * sizeof(float))
        throw SchemaError(path.string() + ": truncated tensor payload");
    for (std::size_t i = 0; i < payload.size(); ++i) m.data[i] = payload[i];
    return m;
}

inline void save_tensor_vec(const std::vector<double>& v, const std::filesystem::path& path) {
    Matrix m(1, v.size());
    m.data = v;
    save_tensor(m, path);
}

inline std::vector<double> load_tensor_vec(const std::filesystem::path& path,
                                           std::size_t expected_len) {
    Matrix m = load_tensor(path);
    if (m.rows * m.cols != expected_len)
        throw SchemaError(path.string() + ": expected " + std::to_string(expected_len) +
                          " values, found " + std::to_string(m.rows * m.cols));
    return m.data;
}

} // namespace toothmatch
