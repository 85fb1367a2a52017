#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "isoflow/lie_model.hpp"
#include "isoflow/root_data.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// How two positive roots λ, μ are related, for the ad* and connection tables.
enum class RootRelation {
  equal,            // λ = μ
  lambda_above,     // λ - μ ∈ Δ₊
  mu_above,         // μ - λ ∈ Δ₊
  unrelated,        // λ - μ ∉ Δ ∪ {0}
};

/// The solvable algebra 𝔞+𝔫 of the Iwasawa decomposition, carrying the
/// left-invariant metric induced from B on 𝔭.
///
/// Vectors of 𝔞+𝔫 are coordinate vectors in an adapted orthonormal basis:
/// first an orthonormal basis e⁰ of 𝔞 (w.r.t. B), then for every positive
/// root, in datum order, an orthonormal basis of g_λ (w.r.t. ⟨X,Y⟩ =
/// B(pr_𝔭 X, pr_𝔭 Y)). The metric is therefore the Euclidean dot product.
class SolvableModel {
 public:
  const LieModel& lie() const { return *lie_; }
  std::shared_ptr<const LieModel> lie_ptr() const { return lie_; }

  int dimension() const { return static_cast<int>(root_of_.size()); }
  int rank() const { return datum_.rank; }
  int k_dimension() const { return static_cast<int>(k_basis_.cols()); }
  const RootDatum& datum() const { return datum_; }

  /// -1 for a basis vector of 𝔞, otherwise the index of its root.
  int root_of(int basis_index) const { return root_of_.at(basis_index); }
  /// Basis indices spanning g_λ.
  const std::vector<int>& root_space(int root) const { return root_spaces_.at(root); }
  /// H_λ as an element of 𝔞+𝔫.
  Vec root_vector(int root) const;
  /// λ evaluated on the 𝔞-component of `x`.
  double root_value(int root, const Vec& x) const;
  RootRelation relation(int lambda, int mu) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  /// ad(x) restricted to 𝔞+𝔫 (a subalgebra).
  Mat ad(const Vec& x) const;
  const std::vector<Mat>& ad_basis() const { return ad_basis_; }

  /// Coordinates in the LieModel basis of an element of 𝔞+𝔫.
  Vec to_algebra(const Vec& x) const;
  /// Matrix realization of an element of 𝔞+𝔫.
  Mat matrix(const Vec& x) const;
  /// Iwasawa components of an element of 𝔤 (LieModel coordinates).
  struct Split {
    Vec k;   // coordinates in the 𝔨 basis
    Vec an;  // coordinates in 𝔞+𝔫
  };
  Split split(const Vec& g) const;
  /// 𝔞+𝔫 coordinates of g; throws ModelError when g has a 𝔨-component.
  Vec require_an(const Vec& g) const;

  /// θ applied to an element of 𝔞+𝔫, in LieModel coordinates.
  Vec theta(const Vec& x) const;

  /// Columns: LieModel coordinates of the adapted 𝔞+𝔫 basis.
  const Mat& embedding() const { return embedding_; }
  /// Columns: LieModel coordinates of a basis of 𝔨.
  const Mat& k_basis() const { return k_basis_; }

  /// Gram matrix of B(pr_𝔭 X, pr_𝔭 Y) on the adapted basis (identity up to
  /// round-off).
  Mat induced_metric() const;

 private:
  friend SolvableModel root_space_decomposition(std::shared_ptr<const LieModel> model);
  SolvableModel() = default;

  std::shared_ptr<const LieModel> lie_;
  RootDatum datum_;
  std::vector<int> root_of_;
  std::vector<std::vector<int>> root_spaces_;
  Mat embedding_;        // d × n
  Mat k_basis_;          // d × dim 𝔨
  Eigen::MatrixXd adapted_inverse_;  // inverse of [k_basis | embedding]
  std::vector<Mat> ad_basis_;
};

/// Simultaneously diagonalizes ad(𝔞) on 𝔤 and assembles the adapted basis.
///
/// Positive roots are ordered lexicographically by their 𝔞-coordinates.
/// Throws ModelError when 𝔞 is not abelian or not in 𝔭, and
/// DecompositionError when eigenvalues fall in the ambiguous band between
/// tol::eigen and 1e-5.
SolvableModel root_space_decomposition(std::shared_ptr<const LieModel> model);
SolvableModel root_space_decomposition(const LieModel& model);

/// Shorthand for root_space_decomposition(make_model(id)).
SolvableModel load_model(std::string_view id);

}  // namespace isoflow
