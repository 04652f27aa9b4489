#pragma once

#include <random>

#include <gtest/gtest.h>

#include "aep/linalg.hpp"

namespace aep::testing {

inline Operator random_hermitian(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal;
    Operator m(n, n);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(normal(rng), normal(rng));
    }
    return scale * 0.5 * (m + m.adjoint());
}

inline Operator random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Operator m(n, n);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<Operator> qr(m);
    Operator q = qr.householderQ();
    // Fix the phases of R's diagonal so the distribution is Haar.
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
    return q;
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    StateVector v(n);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(normal(rng), normal(rng));
    return v.normalized();
}

inline double max_abs_diff(const Operator& a, const Operator& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace aep::testing
