#pragma once

#include "sigwalk/scalar.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace sigwalk {

/// Dense square matrix, row-major. Only what the kernels need.
template <typename T>
class SquareMatrix {
public:
    explicit SquareMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * static_cast<size_t>(n), T(0)) {}

    int size() const { return n_; }
    T& operator()(int i, int j) { return data_[index(i, j)]; }
    const T& operator()(int i, int j) const { return data_[index(i, j)]; }

    void swap_rows(int a, int b) {
        for (int j = 0; j < n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    size_t index(int i, int j) const { return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j); }

    int n_;
    std::vector<T> data_;
};

namespace detail {
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline double magnitude(const Rational&) { return 1.0; }
inline double magnitude(const Scalar& x) { return x.exact() ? 1.0 : std::abs(x.to_double()); }
}  // namespace detail

/// Gaussian elimination. Exact over the rationals; for inexact scalars the
/// largest-magnitude pivot in each column is used.
template <typename T>
T determinant(SquareMatrix<T> m) {
    const int n = m.size();
    T det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        double best = -1.0;
        for (int r = col; r < n; ++r) {
            if (detail::is_zero(m(r, col))) continue;
            double mag = detail::magnitude(m(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (pivot < 0) return T(0);
        if (pivot != col) {
            m.swap_rows(pivot, col);
            det = -det;
        }
        const T p = m(col, col);
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            if (detail::is_zero(m(r, col))) continue;
            const T factor = m(r, col) / p;
            for (int c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

}  // namespace sigwalk
