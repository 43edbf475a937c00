#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace stokesmg {

using Vector = Eigen::VectorXd;
using Vector2 = Eigen::Vector2d;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Index = Eigen::Index;

} // namespace stokesmg
