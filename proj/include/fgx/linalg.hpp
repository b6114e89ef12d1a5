#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fgx {

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
// Row-major input, k <= 24 by construction of the callers.
inline std::vector<double> symmetric_eigenvalues(int k, std::span<const double> a_in) {
    if (k < 1 || a_in.size() != static_cast<std::size_t>(k) * k)
        throw std::invalid_argument("symmetric_eigenvalues: bad dimensions");
    std::vector<double> a(a_in.begin(), a_in.end());
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * k + j]; };

    double scale = 0.0;
    for (int i = 0; i < k; ++i) scale = std::max(scale, std::abs(at(i, i)));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) scale = std::max(scale, std::abs(at(i, j)));
    if (scale == 0.0) return std::vector<double>(k, 0.0);

    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) off = std::max(off, std::abs(at(i, j)));
        if (off <= 1e-15 * scale) break;

        for (int p = 0; p < k; ++p) {
            for (int q = p + 1; q < k; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < k; ++i) {
                    const double aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < k; ++i) {
                    const double api = at(p, i), aqi = at(q, i);
                    at(p, i) = c * api - s * aqi;
                    at(q, i) = s * api + c * aqi;
                }
            }
        }
    }

    std::vector<double> eig(k);
    for (int i = 0; i < k; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

// Singular values of a (not necessarily symmetric) square matrix, descending,
// computed from the spectrum of G^T G.
inline std::vector<double> singular_values(int k, std::span<const double> g) {
    if (k < 1 || g.size() != static_cast<std::size_t>(k) * k)
        throw std::invalid_argument("singular_values: bad dimensions");
    std::vector<double> gtg(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double s = 0.0;
            for (int l = 0; l < k; ++l)
                s += g[static_cast<std::size_t>(l) * k + i] * g[static_cast<std::size_t>(l) * k + j];
            gtg[static_cast<std::size_t>(i) * k + j] = s;
        }
    std::vector<double> eig = symmetric_eigenvalues(k, gtg);
    for (double& x : eig) x = std::sqrt(std::max(0.0, x));
    return eig;
}

inline double min_singular_value(int k, std::span<const double> g) {
    return singular_values(k, g).back();
}

}  // namespace fgx
