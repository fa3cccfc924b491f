#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace toothmatch {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorKind : int {
    Io = 1,         // missing/unreadable/unwritable files
    Schema = 2,     // malformed inputs, contract violations
    Degenerate = 3, // geometrically or numerically degenerate input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(ErrorKind::Schema, what) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    double l1() const { return std::abs(x) + std::abs(y) + std::abs(z); }
};

inline Vec3 normalized(const Vec3& v, const Vec3& fallback = {0.0, 0.0, 1.0}) {
    double n = v.norm();
    if (n < 1e-12) return fallback;
    return {v.x / n, v.y / n, v.z / n};
}

// Pixel coordinate, (row, col) order.
struct Vec2 {
    double y = 0.0, x = 0.0;
};

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// BCE with logits against a (possibly soft) target in [0,1].
inline double bce_with_logits(double logit, double target) {
    return softplus(logit) - logit * target;
}

enum class Jaw { Upper, Lower };

inline std::string to_string(Jaw j) { return j == Jaw::Upper ? "upper" : "lower"; }

inline Jaw jaw_from_string(const std::string& s) {
    if (s == "upper") return Jaw::Upper;
    if (s == "lower") return Jaw::Lower;
    throw SchemaError("invalid jaw value: \"" + s + "\" (expected \"upper\" or \"lower\")");
}

constexpr int kNumClasses = 17;   // gingiva + 16 tooth classes
constexpr int kNumInstances = 30; // decoder query count
constexpr int kAttentionSlots = 120;

} // namespace toothmatch
