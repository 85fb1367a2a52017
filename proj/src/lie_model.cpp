#include "isoflow/lie_model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

Vec vectorize(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

// Orthonormal (Euclidean) basis of the column space of `m`.
Mat range_basis(const Mat& m, double cutoff = 1e-9) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > cutoff) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

}  // namespace

LieModel::LieModel(std::string id, std::vector<Mat> basis, std::vector<Mat> cartan)
    : id_(std::move(id)), basis_(std::move(basis)) {
  if (basis_.empty()) throw ModelError("model '" + id_ + "' has an empty basis");
  const Eigen::Index n = basis_.front().rows();
  const int d = dimension();
  vec_basis_.resize(n * n, d);
  for (int i = 0; i < d; ++i) {
    if (basis_[i].rows() != n || basis_[i].cols() != n) {
      throw ModelError("model '" + id_ + "': basis matrices differ in shape");
    }
    vec_basis_.col(i) = vectorize(basis_[i]);
  }
  const Mat gram = vec_basis_.transpose() * vec_basis_;
  Eigen::LDLT<Mat> ldlt(gram);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12) {
    throw ModelError("model '" + id_ + "': basis is linearly dependent");
  }
  solve_ = ldlt.solve(vec_basis_.transpose());

  ad_basis_.assign(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Mat c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      ad_basis_[i].col(j) = coordinates(c);
    }
  }
  killing_.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      killing_(i, j) = killing_(j, i) = (ad_basis_[i] * ad_basis_[j]).trace();
    }
  }
  theta_.resize(d, d);
  for (int j = 0; j < d; ++j) theta_.col(j) = coordinates(-basis_[j].transpose());

  for (const Mat& a : cartan) cartan_.push_back(coordinates(a));
  if (cartan_.empty()) throw ModelError("model '" + id_ + "': 𝔞 has no generators");
}

Vec LieModel::coordinates(const Mat& m) const {
  if (m.rows() != matrix_size() || m.cols() != matrix_size()) {
    throw InputError("matrix shape does not match model '" + id_ + "'");
  }
  const Vec v = vectorize(m);
  Vec x = solve_ * v;
  const double residual = (vec_basis_ * x - v).norm();
  if (residual > 1e-9 * (1.0 + v.norm())) {
    throw InputError("matrix is not an element of model '" + id_ + "'");
  }
  return x;
}

Mat LieModel::matrix(const Vec& x) const {
  if (x.size() != dimension()) throw InputError("coordinate vector has wrong dimension");
  Mat m = Mat::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < dimension(); ++i) m += x(i) * basis_[i];
  return m;
}

Mat LieModel::ad(const Vec& x) const {
  if (x.size() != dimension()) throw InputError("coordinate vector has wrong dimension");
  Mat m = Mat::Zero(dimension(), dimension());
  for (int i = 0; i < dimension(); ++i) {
    if (x(i) != 0.0) m += x(i) * ad_basis_[i];
  }
  return m;
}

Vec LieModel::bracket(const Vec& x, const Vec& y) const {
  if (y.size() != dimension()) throw InputError("coordinate vector has wrong dimension");
  return ad(x) * y;
}

ModelInvariants check_invariants(const LieModel& model) {
  ModelInvariants out;
  const int d = model.dimension();
  const Mat& b = model.killing();
  const Mat& th = model.theta();
  const auto e = [d](int i) { return Vec::Unit(d, i); };

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Vec xy = model.bracket(e(i), e(j));
      out.theta_automorphism =
          std::max(out.theta_automorphism, (th * xy - model.bracket(th.col(i), th.col(j))).norm());
      for (int k = 0; k < d; ++k) {
        const Vec jac = model.bracket(xy, e(k)) + model.bracket(model.bracket(e(j), e(k)), e(i)) +
                        model.bracket(model.bracket(e(k), e(i)), e(j));
        out.jacobi = std::max(out.jacobi, jac.cwiseAbs().maxCoeff());
        const double inv = xy.dot(b * e(k)) + e(j).dot(b * model.bracket(e(i), e(k)));
        out.killing_invariance = std::max(out.killing_invariance, std::abs(inv));
      }
    }
  }
  out.killing_symmetry = (b - b.transpose()).cwiseAbs().maxCoeff();
  out.theta_involution = (th * th - Mat::Identity(d, d)).cwiseAbs().maxCoeff();

  const Mat id = Mat::Identity(d, d);
  const Mat qk = range_basis(0.5 * (id + th));
  const Mat qp = range_basis(0.5 * (id - th));
  Eigen::SelfAdjointEigenSolver<Mat> ek(qk.transpose() * b * qk);
  Eigen::SelfAdjointEigenSolver<Mat> ep(qp.transpose() * b * qp);
  out.max_eigen_k = qk.cols() > 0 ? ek.eigenvalues().maxCoeff() : 0.0;
  out.min_eigen_p = qp.cols() > 0 ? ep.eigenvalues().minCoeff() : 0.0;

  const auto& cartan = model.cartan_generators();
  for (const Vec& a : cartan) {
    out.cartan_in_p = std::max(out.cartan_in_p, (th * a + a).cwiseAbs().maxCoeff());
    for (const Vec& a2 : cartan) {
      out.cartan_abelian =
          std::max(out.cartan_abelian, model.bracket(a, a2).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

std::vector<std::string> model_ids() { return {"sl2r", "sl3r", "su21", "su31"}; }

LieModel make_model(std::string_view id) {
  if (id == "sl2r") return make_sl_real(2);
  if (id == "sl3r") return make_sl_real(3);
  if (id == "su21") return make_su_n1(2);
  if (id == "su31") return make_su_n1(3);
  throw InputError("unknown model id '" + std::string(id) + "' (expected sl2r, sl3r, su21, su31)");
}

LieModel make_sl_real(int n) {
  if (n < 2) throw InputError("sl(n,R) needs n >= 2");
  std::vector<Mat> basis;
  std::vector<Mat> cartan;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat m = Mat::Zero(n, n);
      m(i, j) = 1.0;
      basis.push_back(m);
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    Mat h = Mat::Zero(n, n);
    h(i, i) = 1.0;
    h(i + 1, i + 1) = -1.0;
    basis.push_back(h);
    cartan.push_back(h);
  }
  return LieModel("sl" + std::to_string(n) + "r", std::move(basis), std::move(cartan));
}

namespace {

using CMat = Eigen::MatrixXcd;

Mat realify(const CMat& z) {
  const Eigen::Index n = z.rows();
  Mat r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = z.real();
  r.topRightCorner(n, n) = -z.imag();
  r.bottomLeftCorner(n, n) = z.imag();
  r.bottomRightCorner(n, n) = z.real();
  return r;
}

}  // namespace

LieModel make_su_n1(int n) {
  if (n < 1) throw InputError("su(n,1) needs n >= 1");
  const int size = n + 1;
  const std::complex<double> iu(0.0, 1.0);
  std::vector<Mat> basis;
  const auto unit = [size](int i, int j) {
    CMat m = CMat::Zero(size, size);
    m(i, j) = 1.0;
    return m;
  };
  // compact block u(n): skew-hermitian off-diagonal pairs
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      basis.push_back(realify(unit(i, j) - unit(j, i)));
      basis.push_back(realify(iu * (unit(i, j) + unit(j, i))));
    }
  }
  // imaginary traceless diagonal
  for (int i = 0; i + 1 < size; ++i) {
    basis.push_back(realify(iu * (unit(i, i) - unit(i + 1, i + 1))));
  }
  // mixing with the negative direction: X_{jn} = conj(X_{nj})
  for (int j = 0; j < n; ++j) {
    basis.push_back(realify(unit(j, n) + unit(n, j)));
    basis.push_back(realify(iu * (unit(j, n) - unit(n, j))));
  }
  std::vector<Mat> cartan{realify(unit(0, n) + unit(n, 0))};
  return LieModel("su" + std::to_string(n) + "1", std::move(basis), std::move(cartan));
}

}  // namespace isoflow
