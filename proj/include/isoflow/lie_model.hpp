#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

/// A real semisimple Lie algebra realized by real matrices.
///
/// Elements are handled in coordinates with respect to `basis()`. The Cartan
/// involution is θ(X) = -Xᵀ, which covers every shipped model: for the
/// complex models the realification turns conjugate-transpose into transpose.
/// The Killing form is computed as the trace form B(X,Y) = tr(ad X · ad Y).
class LieModel {
 public:
  /// `basis` must be linearly independent and closed under the commutator;
  /// `cartan` spans the chosen maximal abelian subspace 𝔞 ⊂ 𝔭.
  LieModel(std::string id, std::vector<Mat> basis, std::vector<Mat> cartan);

  const std::string& id() const { return id_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return static_cast<int>(basis_.front().rows()); }

  const std::vector<Mat>& basis() const { return basis_; }
  /// Coordinates of the generators of 𝔞.
  const std::vector<Vec>& cartan_generators() const { return cartan_; }

  /// Coordinates of a matrix in the span of the basis. Throws InputError when
  /// the matrix is not in the span.
  Vec coordinates(const Mat& m) const;
  Mat matrix(const Vec& x) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad(x) acting on coordinates.
  Mat ad(const Vec& x) const;

  const Mat& killing() const { return killing_; }
  const Mat& theta() const { return theta_; }

  /// Structure constants c(i,j) = [e_i, e_j] in coordinates, stored as the
  /// columns of ad(e_i).
  const std::vector<Mat>& ad_basis() const { return ad_basis_; }

 private:
  std::string id_;
  std::vector<Mat> basis_;
  std::vector<Vec> cartan_;
  Mat solve_;  // least-squares coordinate map on vectorized matrices
  Mat vec_basis_;
  std::vector<Mat> ad_basis_;
  Mat killing_;
  Mat theta_;
};

/// Max deviations of the structural identities of a LieModel.
struct ModelInvariants {
  double jacobi = 0;              // [[X,Y],Z] + cyclic
  double killing_symmetry = 0;    // B - Bᵀ
  double killing_invariance = 0;  // B([X,Y],Z) + B(Y,[X,Z])
  double theta_involution = 0;    // θ² - I
  double theta_automorphism = 0;  // θ[X,Y] - [θX,θY]
  double min_eigen_p = 0;         // smallest eigenvalue of B on 𝔭 (must be > 0)
  double max_eigen_k = 0;         // largest eigenvalue of B on 𝔨 (must be < 0)
  double cartan_in_p = 0;         // θa + a on 𝔞
  double cartan_abelian = 0;      // [a, a'] on 𝔞
};

ModelInvariants check_invariants(const LieModel& model);

/// Identifiers of the shipped models: "sl2r", "sl3r", "su21", "su31".
std::vector<std::string> model_ids();

/// Throws InputError for an unknown identifier.
LieModel make_model(std::string_view id);

LieModel make_sl_real(int n);
/// 𝔰𝔲(n,1), realified to real 2(n+1)×2(n+1) matrices.
LieModel make_su_n1(int n);

}  // namespace isoflow
