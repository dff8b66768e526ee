#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace hurstlab {

using Scalar = double;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using IndexVector = Eigen::Matrix<Eigen::Index, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Input could not be parsed (bad token, bad column, empty file).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series is unusable for the requested operation (constant, too short, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hurstlab
