#pragma once

#include <string>
#include <vector>

#include "isoflow/block_operator.hpp"
#include "isoflow/foliation_config.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// Which coefficients to use on the blocks where the reference closed forms
/// disagree with the curvature of the model (see README).
///
/// `corrected` holds the values confirmed against the matrix oracle.
/// `reference` and `reference_unit` reproduce the reference coefficients,
/// reading [θξ,X] as the raw bracket and as a unit vector respectively.
enum class CoefficientTable { corrected, reference, reference_unit };

const char* to_string(CoefficientTable table);

/// A generator of the normal space: e⁰_index ∈ 𝔟 or ξ^index_{t_index}.
struct NormalSelector {
  enum class Kind { b, root };
  Kind kind = Kind::root;
  int index = 0;

  static NormalSelector b(int i) { return {Kind::b, i}; }
  static NormalSelector root(int i) { return {Kind::root, i}; }
  /// "b:i" or "xi:i".
  std::string label() const;
};

/// All normal generators of a config, 𝔟 first.
std::vector<NormalSelector> normal_generators(const FoliationConfig& cfg);
/// The generator as a unit vector of 𝔞+𝔫 (model-backed configs only).
Vec normal_vector(const FoliationConfig& cfg, NormalSelector sel);

/// Block labels and sizes of the tangent space, computed from the root datum.
///
/// Labels: "a_rest" for 𝔞 ⊖ (𝔟 + Σ ℝH_{λ_i}); per chosen root i: "ker:i"
/// (Ker ad(ξ^i)|g_{λ_i} ⊖ ℝξ^i), "double:i:q" (the pair X_q, [θξ^i,X_q]
/// normalized, for each basis vector X_q of g_{2λ_i}), "line:i"
/// ((ℝξ^i + ℝH_{λ_i}) ⊖ l_i); then "root:μ" for every other positive root μ.
/// Empty blocks are omitted.
std::vector<Block> block_structure(const FoliationConfig& cfg);

struct TangentDecomposition {
  std::vector<Block> blocks;
  Mat basis;    // n × (n − m0 − k), orthonormal, grouped by block
  Mat normals;  // n × (m0 + k), FoliationConfig::normal_frame()
};

/// Orthonormal tangent basis of the leaf through e. Throws ModelError when
/// the brackets [θξ^i, X_q] fail to be orthogonal in g_{λ_i}.
TangentDecomposition tangent_decomposition(const FoliationConfig& cfg);

/// Closed-form shape operator A_ν on the tangent space.
BlockOperator shape_operator(const FoliationConfig& cfg, NormalSelector sel,
                             CoefficientTable table = CoefficientTable::corrected);
/// A_ν for an arbitrary normal vector ν (by linearity over the generators).
/// Throws DomainError when ν is not normal.
BlockOperator shape_operator(const FoliationConfig& cfg, const Vec& nu,
                             CoefficientTable table = CoefficientTable::corrected);
/// Closed-form normal Jacobi operator R(ν) = R(·,ν)ν on the tangent space.
BlockOperator normal_jacobi(const FoliationConfig& cfg, NormalSelector sel,
                            CoefficientTable table = CoefficientTable::corrected);
/// Closed-form commutator [A_ν, R(ν)]: zero except on the coupled pair blocks.
BlockOperator commutator_closed_form(const FoliationConfig& cfg, NormalSelector sel,
                                     CoefficientTable table = CoefficientTable::corrected);

/// 2×2 matrices of A, R(ν) and [A,R(ν)] on a coupled pair block, in the
/// basis (X, [θξ,X]/ρ), for root norm L, bracket norm ρ and offset t.
struct PairBlock {
  Mat shape;
  Mat jacobi;
  Mat commutator;
};
PairBlock pair_block(double root_norm, double pair_norm, double t, CoefficientTable table);

/// Oracle A_ν on 𝔞+𝔫: X ↦ −pr_T ∇_{pr_T X} ν̃ with the Milnor connection.
/// Throws DomainError when ν is not normal.
Mat oracle_shape_operator(const FoliationConfig& cfg, const Vec& nu);
/// Oracle R(ν): X ↦ R(X,ν)ν on all of 𝔞+𝔫 (not projected).
Mat oracle_normal_jacobi(const FoliationConfig& cfg, const Vec& nu);

/// Closed form minus oracle, on the tangent basis.
struct OracleComparison {
  double max_deviation = 0;
  std::vector<std::pair<std::string, double>> block_deviation;  // diagonal blocks
  double coupling_deviation = 0;  // max over off-diagonal block entries
  double normal_leak = 0;         // max |⟨R(ν)X, N⟩| over tangent X (0 for A)
  Mat closed;
  Mat oracle;
};
OracleComparison compare_shape_operator(const FoliationConfig& cfg, NormalSelector sel,
                                        CoefficientTable table = CoefficientTable::corrected);
OracleComparison compare_normal_jacobi(const FoliationConfig& cfg, NormalSelector sel,
                                       CoefficientTable table = CoefficientTable::corrected);
OracleComparison compare_commutator(const FoliationConfig& cfg, NormalSelector sel,
                                    CoefficientTable table = CoefficientTable::corrected);

struct AdaptednessEntry {
  std::string normal;  // generator label or "a+b" for normalized sums
  double commutator_norm = 0;
  double normal_leak = 0;
  bool adapted = true;
};

/// Coefficients of [A,R] on one coupled pair block:
/// x_to_y = ⟨[A,R]X, Ŷ⟩ and y_to_x = ⟨[A,R]Ŷ, X⟩.
struct PairCommutator {
  std::string label;
  double t = 0;
  double pair_norm = 0;
  double oracle_x_to_y = 0, oracle_y_to_x = 0;
  double corrected_x_to_y = 0, corrected_y_to_x = 0;
  double reference_x_to_y = 0, reference_y_to_x = 0;
};

struct AdaptednessReport {
  bool adapted = true;
  /// "oracle" for model-backed configs, "closed_form" for datum-only ones.
  std::string method;
  bool verified = false;
  double tolerance = tol::algebraic;
  std::vector<AdaptednessEntry> entries;
  std::vector<PairCommutator> pairs;
};

/// Curvature-adaptedness: [A_ν, R(ν)] = 0 and R(ν) preserves the tangent
/// space, for every normal generator and every normalized pairwise sum.
AdaptednessReport adaptedness(const FoliationConfig& cfg);

/// Flat section chart u = (s₁…s_{m0}, t₁…t_k) ↦ Exp(Σ s_i e⁰_i)·γ_{ξ¹}(t₁)⋯γ_{ξᵏ}(t_k).
class SectionChart {
 public:
  explicit SectionChart(FoliationConfig cfg) : cfg_(std::move(cfg)) {}
  int dimension() const { return cfg_.m0() + cfg_.k(); }
  std::vector<std::string> frame_labels() const;
  /// Left-trivialized frame at the point with coordinates u: columns
  /// E⁰_i = e⁰_i and E^j = ξ^j_{u_{m0+j}}.
  Mat frame_at(const Vec& u) const;
  /// Matrix of the group element with coordinates u (model-backed only).
  Mat point(const Vec& u, double step = 1e-3) const;

  struct TransportCheck {
    double frame_deviation = 0;  // transported frame vs frame_at, max entry
    double gram_deviation = 0;   // transported frame Gram matrix vs identity
  };
  /// Transports the frame at the origin along the piecewise geodesic to u
  /// and compares it with frame_at(u).
  TransportCheck verify_transport(const Vec& u, double step = 1e-3) const;

 private:
  FoliationConfig cfg_;
};

SectionChart section_chart(const FoliationConfig& cfg);

/// Mean curvature vector of the leaf through the section point, in frame
/// coordinates (E⁰_1…E⁰_{m0}, E¹…Eᵏ).
Vec leaf_mean_curvature(const FoliationConfig& cfg);
/// Same vector from traces of the oracle shape operators (model-backed only).
Vec leaf_mean_curvature_trace(const FoliationConfig& cfg);

}  // namespace isoflow
