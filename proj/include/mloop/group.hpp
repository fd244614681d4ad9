#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mloop/types.hpp"

namespace mloop {

enum class GroupFamily { SO, SU, U };

std::string to_string(GroupFamily family);
GroupFamily parse_group_family(std::string_view name);

/// A matrix group family together with its defining dimension N.
class GroupSpec {
 public:
  GroupSpec(GroupFamily family, int n);

  GroupFamily family() const { return family_; }
  int n() const { return n_; }
  /// 1 for SU(N), 0 otherwise.
  int eta() const { return family_ == GroupFamily::SU ? 1 : 0; }
  bool is_orthogonal() const { return family_ == GroupFamily::SO; }
  /// Real dimension of the group manifold.
  int dimension() const;
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupFamily family_;
  int n_;
};

/// A real tangent vector stored as a complex matrix, together with the
/// imaginary-part partner used for gradients of complex-valued functions:
/// grad f = grad Re f + i grad Im f.
struct ComplexTangent {
  Matrix re;
  Matrix im;
};

/// Bi-invariant metric <X, Y> = 1/2 Re Tr(X^dagger Y) (1/2 Tr(X^T Y) on SO).
double metric(const Matrix& x, const Matrix& y);
/// Complex-bilinear extension of the metric to complexified vectors.
Complex metric(const ComplexTangent& x, const ComplexTangent& y);

/// Orthonormal basis of the Lie algebra: e_ij - e_ji, i(e_ij + e_ji),
/// i sqrt(2) e_ii for U(N); SU(N) replaces the diagonal block by the
/// traceless generalized Gell-Mann diagonals; SO(N) keeps only e_ij - e_ji.
const std::vector<Matrix>& lie_basis(const GroupSpec& spec);

/// Left-translated basis g * B_k, orthonormal in T_g G.
std::vector<Matrix> frame(const Matrix& g, const GroupSpec& spec);

/// Orthogonal projection of an ambient matrix onto T_g G.
Matrix project_tangent(const Matrix& g, const Matrix& x, const GroupSpec& spec);

/// Largest violation of g^dagger g = I and (SO, SU) det g = 1.
double membership_residual(const Matrix& g, const GroupSpec& spec);
/// Largest violation of the tangency conditions for X at g.
double tangency_residual(const Matrix& g, const Matrix& x, const GroupSpec& spec);

/// Nearest group element (polar factor, then determinant fix).
Matrix repair(const Matrix& g, const GroupSpec& spec);

/// Haar-distributed group element: QR of a Gaussian matrix with the phases
/// of diag(R) divided out; SO flips one column when det = -1, SU divides by
/// the principal N-th root of det.
Matrix haar_sample(const GroupSpec& spec, Rng& rng);

/// Matrix exponential by scaling and squaring of the Taylor series, summed
/// to double precision.
Matrix expm(const Matrix& a);

/// Group inverse (the conjugate transpose).
inline Matrix group_inverse(const Matrix& g) { return g.adjoint(); }

}  // namespace mloop
