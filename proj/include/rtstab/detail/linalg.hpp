#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rtstab/complex_branch.hpp"
#include "rtstab/errors.hpp"

namespace rtstab::detail {

// Dense complex LU with partial pivoting for the small transmission systems.
class ComplexLU {
public:
    // a: row-major n x n
    ComplexLU(std::vector<Complex> a, int n) : a_(std::move(a)), n_(n), piv_(n) {
        sign_ = 1;
        for (int k = 0; k < n_; ++k) {
            int pr = k;
            double best = std::abs(at(k, k));
            for (int i = k + 1; i < n_; ++i) {
                const double m = std::abs(at(i, k));
                if (m > best) {
                    best = m;
                    pr = i;
                }
            }
            piv_[k] = pr;
            if (pr != k) {
                for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(pr, j));
                sign_ = -sign_;
            }
            if (std::abs(at(k, k)) == 0.0) {
                singular_ = true;
                continue;
            }
            for (int i = k + 1; i < n_; ++i) {
                const Complex f = at(i, k) / at(k, k);
                at(i, k) = f;
                for (int j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
            }
        }
    }

    bool singular() const { return singular_; }

    std::vector<Complex> solve(std::vector<Complex> b) const {
        // apply the interchanges in factorization order, then substitute
        for (int k = 0; k < n_; ++k) std::swap(b[k], b[piv_[k]]);
        for (int k = 0; k < n_; ++k)
            for (int i = k + 1; i < n_; ++i) b[i] -= at(i, k) * b[k];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j) b[i] -= at(i, j) * b[j];
            b[i] /= at(i, i);
        }
        return b;
    }

    Complex det() const {
        Complex d(static_cast<double>(sign_), 0.0);
        for (int k = 0; k < n_; ++k) d *= at(k, k);
        return d;
    }

private:
    Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    std::vector<Complex> a_;
    int n_;
    std::vector<int> piv_;
    int sign_;
    bool singular_ = false;
};

inline double norm_inf(const std::vector<Complex>& a, int n) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += std::abs(a[static_cast<std::size_t>(i) * n + j]);
        best = std::max(best, row);
    }
    return best;
}

// cond_inf(A) = ||A||_inf * ||A^-1||_inf, inverse taken column by column.
// Exact (not an estimate); the systems here are 6x6 and 7x7.
inline double cond_inf(const std::vector<Complex>& a, int n) {
    ComplexLU lu(a, n);
    if (lu.singular()) return std::numeric_limits<double>::infinity();
    std::vector<Complex> inv(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> e(n, Complex(0.0, 0.0));
        e[j] = 1.0;
        const auto col = lu.solve(std::move(e));
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + j] = col[i];
    }
    return norm_inf(a, n) * norm_inf(inv, n);
}

} // namespace rtstab::detail
