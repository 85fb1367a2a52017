#pragma once

#include <memory>
#include <vector>

#include "isoflow/root_data.hpp"
#include "isoflow/solvable_model.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// Data (𝔟, λ₁…λ_k, ξ¹…ξᵏ, t₁…t_k) of a foliation and of the leaf through
/// the section point with offsets t.
///
/// `b_basis` holds orthonormal vectors of 𝔞 (rank-length coordinates).
/// `xi_index[i]` picks ξ^i as the xi_index[i]-th adapted basis vector of
/// g_{λ_i}. `model` is null for configs built from a root datum alone.
struct FoliationConfig {
  RootDatum datum;
  SimpleOrthogonalSet set;
  std::vector<Vec> b_basis;
  std::vector<int> xi_index;
  std::vector<double> offsets;
  std::shared_ptr<const SolvableModel> model;

  int k() const { return set.size(); }
  int m0() const { return static_cast<int>(b_basis.size()); }
  bool model_backed() const { return model != nullptr; }
  /// True when 2λ_i is a positive root for some chosen λ_i.
  bool has_doubled_root() const;

  /// Throws ConfigError when any invariant fails.
  void validate() const;

  MeanCurvatureCoefficients coefficients() const;

  /// Section coordinates (0,…,0, t₁,…,t_k) of the configured leaf.
  Vec section_point() const;

  // Vectors of 𝔞+𝔫; these require a model.
  Vec xi(int i) const;
  Vec root_vector(int i) const;  // H_{λ_i}
  /// ξ^i_{t} = ξ^i/cosh(‖λ_i‖t) − tanh(‖λ_i‖t)/‖λ_i‖ · H_{λ_i}.
  Vec xi_t(int i, double t) const;
  /// e⁰_i embedded in 𝔞+𝔫.
  Vec b_vector(int i) const;
  /// Columns e⁰_1…e⁰_{m0}, ξ^1_{t_1}…ξ^k_{t_k}: orthonormal basis of the
  /// normal space of the leaf at the base point.
  Mat normal_frame() const;

  /// Copy with new offsets.
  FoliationConfig with_offsets(std::vector<double> t) const;
};

struct ConfigOptions {
  int k = 1;
  int b_dim = 0;
  std::vector<double> offsets;   // missing entries default to 0
  std::vector<int> chosen;       // empty: default_orthogonal_set
  std::vector<int> xi_index;     // empty: all 0
};

FoliationConfig make_config(std::shared_ptr<const SolvableModel> model, const ConfigOptions& opts);
/// Datum-only config; its results are labelled unverified.
FoliationConfig make_config(const RootDatum& datum, const ConfigOptions& opts);

}  // namespace isoflow
