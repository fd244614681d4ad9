#include "mloop/group.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mloop {

std::string to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::SO: return "SO";
    case GroupFamily::SU: return "SU";
    case GroupFamily::U: return "U";
  }
  return "?";
}

GroupFamily parse_group_family(std::string_view name) {
  if (name == "SO") return GroupFamily::SO;
  if (name == "SU") return GroupFamily::SU;
  if (name == "U") return GroupFamily::U;
  throw std::invalid_argument("unknown group family '" + std::string(name) + "'");
}

GroupSpec::GroupSpec(GroupFamily family, int n) : family_(family), n_(n) {
  const int min_n = family == GroupFamily::U ? 1 : 2;
  if (n < min_n)
    throw std::invalid_argument(to_string(family) + "(N) needs N >= " + std::to_string(min_n));
}

int GroupSpec::dimension() const {
  switch (family_) {
    case GroupFamily::SO: return n_ * (n_ - 1) / 2;
    case GroupFamily::SU: return n_ * n_ - 1;
    case GroupFamily::U: return n_ * n_;
  }
  return 0;
}

std::string GroupSpec::name() const { return to_string(family_) + "(" + std::to_string(n_) + ")"; }

double metric(const Matrix& x, const Matrix& y) {
  // 1/2 Re Tr(X^dagger Y) = 1/2 Re sum conj(x_ij) y_ij
  return 0.5 * (x.conjugate().cwiseProduct(y)).sum().real();
}

Complex metric(const ComplexTangent& x, const ComplexTangent& y) {
  return {metric(x.re, y.re) - metric(x.im, y.im), metric(x.re, y.im) + metric(x.im, y.re)};
}

namespace {

std::vector<Matrix> build_basis(const GroupSpec& spec) {
  const int n = spec.n();
  const Complex i_unit(0.0, 1.0);
  std::vector<Matrix> basis;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Matrix m = Matrix::Zero(n, n);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      basis.push_back(m);
    }
  }
  if (spec.is_orthogonal()) return basis;

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Matrix m = Matrix::Zero(n, n);
      m(a, b) = i_unit;
      m(b, a) = i_unit;
      basis.push_back(m);
    }
  }
  if (spec.family() == GroupFamily::U) {
    for (int a = 0; a < n; ++a) {
      Matrix m = Matrix::Zero(n, n);
      m(a, a) = i_unit * std::sqrt(2.0);
      basis.push_back(m);
    }
  } else {
    for (int k = 1; k < n; ++k) {
      const double c = std::sqrt(2.0 / (k * (k + 1.0)));
      Matrix m = Matrix::Zero(n, n);
      for (int a = 0; a < k; ++a) m(a, a) = i_unit * c;
      m(k, k) = -i_unit * (c * k);
      basis.push_back(m);
    }
  }
  return basis;
}

}  // namespace

const std::vector<Matrix>& lie_basis(const GroupSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Matrix>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(static_cast<int>(spec.family()), spec.n());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_basis(spec)).first;
  return it->second;
}

std::vector<Matrix> frame(const Matrix& g, const GroupSpec& spec) {
  std::vector<Matrix> out;
  for (const auto& b : lie_basis(spec)) out.push_back(g * b);
  return out;
}

Matrix project_tangent(const Matrix& g, const Matrix& x, const GroupSpec& spec) {
  if (g.rows() != spec.n() || x.rows() != spec.n() || x.cols() != spec.n())
    throw std::invalid_argument("project_tangent: dimension mismatch");
  Matrix a = g.adjoint() * x;
  Matrix anti = 0.5 * (a - a.adjoint());
  if (spec.is_orthogonal()) anti = anti.real().cast<Complex>();
  if (spec.eta() == 1) anti -= (anti.trace() / static_cast<double>(spec.n())) *
                               Matrix::Identity(spec.n(), spec.n());
  return g * anti;
}

double membership_residual(const Matrix& g, const GroupSpec& spec) {
  const int n = spec.n();
  double r = (g.adjoint() * g - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (spec.family() != GroupFamily::U) r = std::max(r, std::abs(g.determinant() - 1.0));
  if (spec.is_orthogonal()) r = std::max(r, g.imag().cwiseAbs().maxCoeff());
  return r;
}

double tangency_residual(const Matrix& g, const Matrix& x, const GroupSpec& spec) {
  Matrix a = g.adjoint() * x;
  double r = (a + a.adjoint()).cwiseAbs().maxCoeff();
  if (spec.eta() == 1) r = std::max(r, std::abs(a.trace()));
  if (spec.is_orthogonal()) r = std::max(r, x.imag().cwiseAbs().maxCoeff());
  return r;
}

namespace {

Matrix fix_determinant(Matrix q, const GroupSpec& spec) {
  if (spec.family() == GroupFamily::SO) {
    if (q.determinant().real() < 0) q.col(0) *= -1.0;
  } else if (spec.family() == GroupFamily::SU) {
    const double phase = std::arg(q.determinant());
    q *= std::polar(1.0, -phase / spec.n());
  }
  return q;
}

}  // namespace

Matrix repair(const Matrix& g, const GroupSpec& spec) {
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix polar = svd.matrixU() * svd.matrixV().adjoint();
  if (spec.is_orthogonal()) polar = polar.real().cast<Complex>();
  return fix_determinant(polar, spec);
}

Matrix haar_sample(const GroupSpec& spec, Rng& rng) {
  const int n = spec.n();
  std::normal_distribution<double> normal;
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      z(i, j) = spec.is_orthogonal() ? Complex(normal(rng), 0.0)
                                     : Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0 ? d / mag : Complex(1.0);
  }
  if (spec.is_orthogonal()) q = q.real().cast<Complex>();
  return fix_determinant(q, spec);
}

Matrix expm(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k < 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace mloop
