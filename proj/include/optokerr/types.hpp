#pragma once

#include <complex>

#include <Eigen/Dense>

namespace optokerr {

using Complex = std::complex<double>;

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using VectorX = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;

}  // namespace optokerr
