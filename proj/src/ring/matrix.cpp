#include "catalyst/matrix.hpp"

#include <stdexcept>

namespace catalyst {

RingMatrix RingMatrix::identity(std::size_t n, const Tower& tower) {
    RingMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = tower.one();
    return m;
}

RingMatrix RingMatrix::column(const std::vector<RingElement>& v) {
    RingMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    RingMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const RingElement& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const RingElement& bkj = b(k, j);
                if (!bkj.is_zero()) out(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    RingMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    RingMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

RingMatrix operator*(const RingElement& s, const RingMatrix& m) {
    RingMatrix out = m;
    for (auto& e : out.data_) {
        if (!e.is_zero()) e = s * e;
    }
    return out;
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        if (a.data_[i] != b.data_[i]) return false;
    }
    return true;
}

RingMatrix RingMatrix::adjoint() const {
    RingMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj((*this)(i, j));
    }
    return out;
}

RingMatrix RingMatrix::transpose() const {
    RingMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

RingMatrix RingMatrix::conjugate() const {
    RingMatrix out = *this;
    for (auto& e : out.data_) e = conj(e);
    return out;
}

bool RingMatrix::is_zero() const {
    for (const auto& e : data_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

std::string RingMatrix::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j > 0) out += " | ";
            out += catalyst::to_string((*this)(i, j));
        }
        out += "\n";
    }
    return out;
}

RingMatrix kron(const RingMatrix& a, const RingMatrix& b) {
    RingMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const RingElement& aij = a(i, j);
            if (aij.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    const RingElement& bkl = b(k, l);
                    if (!bkl.is_zero()) out(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
                }
            }
        }
    }
    return out;
}

}  // namespace catalyst
