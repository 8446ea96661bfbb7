#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace skm {

template <class T, int M = Eigen::Dynamic, int N = Eigen::Dynamic>
using matrix = Eigen::Matrix<T, M, N>;

template <class T, int M = Eigen::Dynamic>
using vector = matrix<T, M, 1>;

using Real = double;

using Vec = vector<Real>;
using Mat = matrix<Real>;
using IVec = vector<int>;
using IMat = matrix<int>;

/// Thrown when an integrator or sampler fails numerically (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skm
