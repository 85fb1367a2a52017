#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

/// Positive restricted roots of a symmetric space of non-compact type.
///
/// Each root λ is stored as its dual vector H_λ ∈ 𝔞 (⟨H_λ, a⟩ = λ(a)) in an
/// orthonormal basis of 𝔞. When 2λ is also a positive root it appears in
/// `roots` with vector exactly 2·H_λ, and `double_mult[λ]` repeats its
/// multiplicity.
struct RootDatum {
  int rank = 0;
  std::vector<Vec> roots;
  std::vector<int> mult;
  std::vector<int> double_mult;
  /// True when the datum was computed from a matrix model.
  bool verified = false;

  int size() const { return static_cast<int>(roots.size()); }
  double norm(int root) const { return roots.at(root).norm(); }
  /// Index of 2λ when it is a positive root.
  std::optional<int> double_of(int root) const;
  /// Index of a root whose vector equals `h` within the eigenvalue tolerance.
  std::optional<int> find(const Vec& h) const;
  /// Roots that are not a sum of two positive roots, in datum order.
  std::vector<int> simple_roots() const;
  /// Σ_λ m_λ H_λ over all positive roots.
  Vec weighted_root_sum() const;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

/// Chosen roots λ₁…λ_k, as indices into RootDatum::roots.
struct SimpleOrthogonalSet {
  std::vector<int> indices;
  int size() const { return static_cast<int>(indices.size()); }
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  /// Per chosen root: whether 2λ_i is a positive root.
  std::vector<bool> doubled;
};

ValidationReport validate_orthogonal_set(const RootDatum& datum, const SimpleOrthogonalSet& set);

/// First `k` simple roots taken greedily so that they stay mutually orthogonal.
/// Throws ConfigError when fewer than `k` are available.
SimpleOrthogonalSet default_orthogonal_set(const RootDatum& datum, int k);

/// Orthonormal basis of the first `dim` directions of 𝔞 ⊖ span{H_λ : λ ∈ set},
/// obtained by Gram–Schmidt on the coordinate axes.
std::vector<Vec> complement_basis(const RootDatum& datum, const SimpleOrthogonalSet& set, int dim);

/// Largest admissible dim 𝔟 for the chosen set.
int max_b_dimension(const RootDatum& datum, const SimpleOrthogonalSet& set);

/// Everything the section ODE consumes.
///
/// Slot i < m0 carries the constant drift Σ_λ m_λ ⟨H_λ, e⁰_i⟩; slot m0+j
/// decays at rate ‖λ_j‖²·(m_{λ_j} + 2m_{2λ_j}).
struct MeanCurvatureCoefficients {
  std::vector<double> drift;
  std::vector<double> root_norm;  // ‖λ_j‖
  std::vector<int> weight;        // m_{λ_j} + 2 m_{2λ_j}
  bool verified = false;

  int m0() const { return static_cast<int>(drift.size()); }
  int k() const { return static_cast<int>(root_norm.size()); }
  int dimension() const { return m0() + k(); }
  /// ‖λ_j‖²·(m_{λ_j} + 2m_{2λ_j}).
  double decay_rate(int j) const;
  std::vector<double> decay_rates() const;
};

MeanCurvatureCoefficients mean_curvature_coefficients(const RootDatum& datum,
                                                      const SimpleOrthogonalSet& set,
                                                      const std::vector<Vec>& b_basis);

}  // namespace isoflow
