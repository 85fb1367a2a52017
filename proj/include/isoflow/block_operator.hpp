#pragma once

#include <string>
#include <vector>

#include "isoflow/types.hpp"

namespace isoflow {

/// A labelled run of consecutive tangent basis vectors.
struct Block {
  std::string label;
  int offset = 0;
  int size = 0;
  /// For a coupled pair block (X, Ŷ): ‖[θξ, X]‖ before normalization.
  double pair_norm = 0;
};

/// Operator on the tangent space of a leaf, stored in an orthonormal basis
/// grouped by root-space block.
///
/// `basis` has one column per tangent basis vector (𝔞+𝔫 coordinates);
/// `matrix` acts on coefficients in that basis.
struct BlockOperator {
  std::vector<Block> blocks;
  Mat basis;
  Mat matrix;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  const Block& find(const std::string& label) const;
  bool has(const std::string& label) const;
  /// Diagonal sub-block for `label`.
  Mat block(const std::string& label) const;
  /// Coupling rows(label_a) × cols(label_b).
  Mat coupling(const std::string& row_label, const std::string& col_label) const;
  /// Same operator written on all of 𝔞+𝔫 (zero on the normal space).
  Mat ambient() const { return basis * matrix * basis.transpose(); }
  double asymmetry() const;
};

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);

/// Max |a − b| entrywise; throws InputError when shapes differ.
double max_deviation(const Mat& a, const Mat& b);

}  // namespace isoflow
