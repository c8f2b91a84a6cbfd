#pragma once

// Dense tensors stored with the first axis varying fastest.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace sobolev::detail {

inline std::size_t extent_product(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

/// Replaces every fiber along `axis` (length dims[axis]) by fn(fiber) of length out_len.
template <class Fn>
std::vector<double> map_fibers(std::span<const double> in, const std::vector<std::size_t>& dims,
                               std::size_t axis, std::size_t out_len, Fn&& fn) {
    std::size_t inner = 1, outer = 1;
    for (std::size_t i = 0; i < axis; ++i) inner *= dims[i];
    for (std::size_t i = axis + 1; i < dims.size(); ++i) outer *= dims[i];
    const std::size_t n = dims[axis];

    std::vector<double> out(inner * out_len * outer, 0.0);
    std::vector<double> fin(n), fout(out_len);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            for (std::size_t j = 0; j < n; ++j) fin[j] = in[i + inner * (j + n * o)];
            std::fill(fout.begin(), fout.end(), 0.0);
            fn(std::span<const double>(fin), std::span<double>(fout));
            for (std::size_t k = 0; k < out_len; ++k) out[i + inner * (k + out_len * o)] = fout[k];
        }
    }
    return out;
}

/// Contracts `axis` with a dense row-major matrix of shape rows x dims[axis].
inline std::vector<double> contract_axis(std::span<const double> in, const std::vector<std::size_t>& dims,
                                         std::size_t axis, std::span<const double> matrix,
                                         std::size_t rows) {
    const std::size_t cols = dims[axis];
    return map_fibers(in, dims, axis, rows, [&](std::span<const double> f, std::span<double> out) {
        for (std::size_t r = 0; r < rows; ++r) {
            const double* row = matrix.data() + r * cols;
            double acc = 0.0;
            for (std::size_t c = 0; c < cols; ++c) acc += row[c] * f[c];
            out[r] = acc;
        }
    });
}

/// Odometer over a multi-dimensional index, first axis fastest.
class Odometer {
public:
    explicit Odometer(std::vector<std::size_t> dims) : dims_(std::move(dims)), idx_(dims_.size(), 0) {
        done_ = extent_product(dims_) == 0;
    }
    bool done() const { return done_; }
    const std::vector<std::size_t>& index() const { return idx_; }
    void next() {
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (++idx_[i] < dims_[i]) return;
            idx_[i] = 0;
        }
        done_ = true;
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
};

} // namespace sobolev::detail
