#pragma once

#include <functional>

#include <Eigen/Core>

namespace blo {

/// Central finite-difference gradient of a scalar function.
inline Eigen::VectorXd fd_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& z, double h) {
  Eigen::VectorXd g(z.size());
  Eigen::VectorXd zp = z, zm = z;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    zp[j] = z[j] + h;
    zm[j] = z[j] - h;
    g[j] = (f(zp) - f(zm)) / (2.0 * h);
    zp[j] = z[j];
    zm[j] = z[j];
  }
  return g;
}

/// Central finite-difference Jacobian of a vector-valued function.
/// Row i, column j holds d out_i / d z_j.
inline Eigen::MatrixXd fd_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& z, double h) {
  Eigen::MatrixXd jac;
  Eigen::VectorXd zp = z, zm = z;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    zp[j] = z[j] + h;
    zm[j] = z[j] - h;
    const Eigen::VectorXd col = (f(zp) - f(zm)) / (2.0 * h);
    if (jac.size() == 0) jac.resize(col.size(), z.size());
    jac.col(j) = col;
    zp[j] = z[j];
    zm[j] = z[j];
  }
  return jac;
}

}  // namespace blo
