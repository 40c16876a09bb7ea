#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mobisim {

using Complex = std::complex<double>;

/// Complex matrix of at most 4×4; storage stays on the stack.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>;
using RVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

}  // namespace mobisim
