#pragma once

#include <functional>

#include "mloop/group.hpp"
#include "mloop/holonomy.hpp"

namespace mloop {

using Observable = std::function<Complex(const Configuration&)>;

inline constexpr double kGradientStep = 1e-5;
inline constexpr double kLaplacianStep = 1e-4;

/// Central differences of f along Q_e exp(t B_k) for every basis direction,
/// reassembled into a complexified tangent vector.
ComplexTangent fd_gradient(const Observable& f, int edge, const Configuration& q,
                           double step = kGradientStep);

/// Sum over the frame of second differences of f along Q_e exp(t B_k).
Complex fd_laplacian(const Observable& f, int edge, const Configuration& q,
                     double step = kLaplacianStep);

/// max |a - b| / max(1, max |b|) over matrix entries.
double relative_error(const Matrix& a, const Matrix& b);
double relative_error(const ComplexTangent& a, const ComplexTangent& b);

}  // namespace mloop
