#include "mloop/finite_difference.hpp"

#include <algorithm>

namespace mloop {

namespace {

Complex shifted(const Observable& f, Configuration& work, int edge, const Matrix& g,
                const Matrix& b, double t) {
  work.links[edge] = g * expm(t * b);
  return f(work);
}

}  // namespace

ComplexTangent fd_gradient(const Observable& f, int edge, const Configuration& q, double step) {
  const int n = q.spec.n();
  const Matrix& g = q.links.at(edge);
  Configuration work = q;
  ComplexTangent out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (const auto& b : lie_basis(q.spec)) {
    const Complex d = (shifted(f, work, edge, g, b, step) - shifted(f, work, edge, g, b, -step)) /
                      (2.0 * step);
    out.re += d.real() * (g * b);
    out.im += d.imag() * (g * b);
  }
  return out;
}

Complex fd_laplacian(const Observable& f, int edge, const Configuration& q, double step) {
  const Matrix& g = q.links.at(edge);
  Configuration work = q;
  const Complex center = f(q);
  Complex sum = 0.0;
  for (const auto& b : lie_basis(q.spec)) {
    sum += (shifted(f, work, edge, g, b, step) - 2.0 * center +
            shifted(f, work, edge, g, b, -step)) /
           (step * step);
  }
  return sum;
}

double relative_error(const Matrix& a, const Matrix& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

double relative_error(const ComplexTangent& a, const ComplexTangent& b) {
  return std::max(relative_error(a.re, b.re), relative_error(a.im, b.im));
}

}  // namespace mloop
