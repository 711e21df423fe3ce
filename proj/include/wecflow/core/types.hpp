#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>

namespace wecflow {

using Index = Eigen::Index;
using Real = double;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;

/// View a contiguous (re, im) pair range inside a real vector as a complex vector.
/// The layout of std::complex<double> is guaranteed to be {re, im}.
inline Eigen::Map<CVec> complex_view(Vec& v, Index offset, Index n) {
  return Eigen::Map<CVec>(reinterpret_cast<Complex*>(v.data() + offset), n);
}

inline Eigen::Map<const CVec> complex_view(const Vec& v, Index offset, Index n) {
  return Eigen::Map<const CVec>(reinterpret_cast<const Complex*>(v.data() + offset), n);
}

}  // namespace wecflow
