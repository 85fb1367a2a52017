#include "isoflow/block_operator.hpp"

#include "isoflow/errors.hpp"

namespace isoflow {

const Block& BlockOperator::find(const std::string& label) const {
  for (const Block& b : blocks) {
    if (b.label == label) return b;
  }
  throw InputError("no block labelled '" + label + "'");
}

bool BlockOperator::has(const std::string& label) const {
  for (const Block& b : blocks) {
    if (b.label == label) return true;
  }
  return false;
}

Mat BlockOperator::block(const std::string& label) const { return coupling(label, label); }

Mat BlockOperator::coupling(const std::string& row_label, const std::string& col_label) const {
  const Block& r = find(row_label);
  const Block& c = find(col_label);
  return matrix.block(r.offset, c.offset, r.size, c.size);
}

double BlockOperator::asymmetry() const {
  if (matrix.size() == 0) return 0;
  return (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.basis.cols() != b.basis.cols()) {
    throw InputError("commutator of operators on different bases");
  }
  BlockOperator out{a.blocks, a.basis, a.matrix * b.matrix - b.matrix * a.matrix};
  return out;
}

double max_deviation(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch");
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace isoflow
