#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catalyst/ring.hpp"

namespace catalyst {

/// Dense row-major matrix of ring elements. Empty (towerless) entries are zero.
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RingMatrix identity(std::size_t n, const Tower& tower);
    static RingMatrix column(const std::vector<RingElement>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const RingElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator*(const RingElement& s, const RingMatrix& m);
    friend bool operator==(const RingMatrix& a, const RingMatrix& b);
    friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }

    RingMatrix adjoint() const;
    RingMatrix transpose() const;
    /// Entrywise conjugate.
    RingMatrix conjugate() const;
    bool is_zero() const;

    /// Multi-line text, one row per line, entries separated by " | ".
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<RingElement> data_;
};

RingMatrix kron(const RingMatrix& a, const RingMatrix& b);

}  // namespace catalyst
