#pragma once

#include <Eigen/Dense>

namespace flagproj::detail {

/// Determinant of a small square matrix without heap allocation for
/// sizes <= 6 (fixed-size Eigen kernels); falls back to dynamic LU above.
inline double det_small(const Eigen::MatrixXd& m) {
    switch (m.rows()) {
        case 0:
            return 1.0;
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return Eigen::Matrix3d(m).determinant();
        case 4:
            return Eigen::Matrix4d(m).determinant();
        case 5:
            return Eigen::Matrix<double, 5, 5>(m).determinant();
        case 6:
            return Eigen::Matrix<double, 6, 6>(m).determinant();
        default:
            return m.determinant();
    }
}

}  // namespace flagproj::detail
