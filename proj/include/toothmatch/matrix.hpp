#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toothmatch/common.hpp"
#include "toothmatch/rng.hpp"

namespace toothmatch {

// Dense row-major matrix of doubles. The feature maps in this project are
// small (at most a few hundred channels by a few thousand faces), so plain
// loops are all we need.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static Matrix random_uniform(std::size_t r, std::size_t c, SplitMix64& rng, double lo,
                                 double hi) {
        Matrix m(r, c);
        for (double& v : m.data) v = rng.uniform(lo, hi);
        return m;
    }
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw SchemaError("matmul shape mismatch: " + std::to_string(a.rows) + "x" +
                          std::to_string(a.cols) + " * " + std::to_string(b.rows) + "x" +
                          std::to_string(b.cols));
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row(i);
        double* orow = out.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

// Affine map y = W x + b, applied column-wise to feature maps (in x M -> out x M).
struct LinearMap {
    Matrix weight;              // out x in
    std::vector<double> bias;   // out

    LinearMap() = default;
    LinearMap(Matrix w, std::vector<double> b) : weight(std::move(w)), bias(std::move(b)) {
        if (bias.size() != weight.rows) throw SchemaError("linear map bias/weight mismatch");
    }

    std::size_t in_dim() const { return weight.cols; }
    std::size_t out_dim() const { return weight.rows; }

    Matrix apply(const Matrix& x) const {
        if (x.rows != weight.cols)
            throw SchemaError("linear map input has " + std::to_string(x.rows) +
                              " channels, expected " + std::to_string(weight.cols));
        Matrix out = matmul(weight, x);
        for (std::size_t r = 0; r < out.rows; ++r) {
            double b = bias[r];
            double* orow = out.row(r);
            for (std::size_t c = 0; c < out.cols; ++c) orow[c] += b;
        }
        return out;
    }

    // Single column in, single column out.
    std::vector<double> apply_vec(const std::vector<double>& x) const {
        if (x.size() != weight.cols) throw SchemaError("linear map input length mismatch");
        std::vector<double> out(weight.rows);
        for (std::size_t r = 0; r < weight.rows; ++r) {
            double acc = bias[r];
            const double* wrow = weight.row(r);
            for (std::size_t c = 0; c < x.size(); ++c) acc += wrow[c] * x[c];
            out[r] = acc;
        }
        return out;
    }

    static LinearMap zero(std::size_t out, std::size_t in) {
        return LinearMap(Matrix(out, in), std::vector<double>(out, 0.0));
    }

    static LinearMap seeded(std::size_t out, std::size_t in, std::uint64_t master_seed,
                            std::string_view role, double lo = -0.1, double hi = 0.1) {
        SplitMix64 rng = seeded_stream(master_seed, role);
        Matrix w = Matrix::random_uniform(out, in, rng, lo, hi);
        std::vector<double> b(out);
        for (double& v : b) v = rng.uniform(lo, hi);
        return LinearMap(std::move(w), std::move(b));
    }
};

} // namespace toothmatch
