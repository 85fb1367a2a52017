#include "isoflow/solvable_model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

constexpr double kAmbiguousGap = 1e-5;

struct Cluster {
  Mat q;  // orthonormal columns in Cholesky coordinates
  std::vector<double> key;
};

enum class Sign { zero, positive, negative };

Sign lexicographic_sign(const std::vector<double>& key) {
  for (double x : key) {
    if (std::abs(x) > tol::eigen) return x > 0 ? Sign::positive : Sign::negative;
  }
  return Sign::zero;
}

bool lexicographic_less(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol::eigen) return a[i] < b[i];
  }
  return false;
}

// Gram–Schmidt of `candidates` w.r.t. the positive form `gram`, keeping at
// most `want` vectors.
std::vector<Vec> orthonormalize(const std::vector<Vec>& candidates, const Mat& gram, int want) {
  std::vector<Vec> out;
  for (const Vec& c : candidates) {
    if (static_cast<int>(out.size()) == want) break;
    const double scale = std::sqrt(std::max(c.dot(gram * c), 0.0));
    if (scale < 1e-9) continue;
    Vec v = c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& u : out) v -= u.dot(gram * v) * u;
    }
    const double n2 = v.dot(gram * v);
    if (n2 <= 0 || std::sqrt(n2) < 1e-7 * scale) continue;
    out.push_back(v / std::sqrt(n2));
  }
  return out;
}

}  // namespace

Vec SolvableModel::root_vector(int root) const {
  Vec h = Vec::Zero(dimension());
  h.head(rank()) = datum_.roots.at(root);
  return h;
}

double SolvableModel::root_value(int root, const Vec& x) const {
  return datum_.roots.at(root).dot(x.head(rank()));
}

RootRelation SolvableModel::relation(int lambda, int mu) const {
  if (lambda == mu) return RootRelation::equal;
  const Vec diff = datum_.roots.at(lambda) - datum_.roots.at(mu);
  if (datum_.find(diff)) return RootRelation::lambda_above;
  if (datum_.find(-diff)) return RootRelation::mu_above;
  return RootRelation::unrelated;
}

Mat SolvableModel::ad(const Vec& x) const {
  if (x.size() != dimension()) throw InputError("vector is not in 𝔞+𝔫 (wrong dimension)");
  Mat m = Mat::Zero(dimension(), dimension());
  for (int i = 0; i < dimension(); ++i) {
    if (x(i) != 0.0) m += x(i) * ad_basis_[i];
  }
  return m;
}

Vec SolvableModel::bracket(const Vec& x, const Vec& y) const {
  if (y.size() != dimension()) throw InputError("vector is not in 𝔞+𝔫 (wrong dimension)");
  return ad(x) * y;
}

Vec SolvableModel::to_algebra(const Vec& x) const {
  if (x.size() != dimension()) throw InputError("vector is not in 𝔞+𝔫 (wrong dimension)");
  return embedding_ * x;
}

Mat SolvableModel::matrix(const Vec& x) const { return lie_->matrix(to_algebra(x)); }

SolvableModel::Split SolvableModel::split(const Vec& g) const {
  if (g.size() != lie_->dimension()) throw InputError("vector is not in 𝔤 (wrong dimension)");
  const Vec c = adapted_inverse_ * g;
  return {c.head(k_dimension()), c.tail(dimension())};
}

Vec SolvableModel::require_an(const Vec& g) const {
  Split s = split(g);
  if (s.k.size() > 0 && s.k.cwiseAbs().maxCoeff() > 1e-9 * (1.0 + g.norm())) {
    throw ModelError("element has a 𝔨-component; it is not in 𝔞+𝔫");
  }
  return s.an;
}

Vec SolvableModel::theta(const Vec& x) const { return lie_->theta() * to_algebra(x); }

Mat SolvableModel::induced_metric() const {
  const int d = lie_->dimension();
  const Mat p = 0.5 * (Mat::Identity(d, d) - lie_->theta());
  return embedding_.transpose() * p.transpose() * lie_->killing() * p * embedding_;
}

SolvableModel root_space_decomposition(const LieModel& model) {
  return root_space_decomposition(std::make_shared<const LieModel>(model));
}

SolvableModel root_space_decomposition(std::shared_ptr<const LieModel> model) {
  const int d = model->dimension();
  const Mat& b = model->killing();
  const Mat& th = model->theta();
  const Mat id = Mat::Identity(d, d);

  for (const Vec& a : model->cartan_generators()) {
    if ((th * a + a).cwiseAbs().maxCoeff() > tol::algebraic * (1.0 + a.norm())) {
      throw ModelError("𝔞 generator is not in 𝔭");
    }
    for (const Vec& a2 : model->cartan_generators()) {
      if (model->bracket(a, a2).cwiseAbs().maxCoeff() > tol::algebraic) {
        throw ModelError("candidate 𝔞 is not abelian");
      }
    }
  }

  // B_θ(X,Y) = -B(X,θY) is an inner product on 𝔤 making every ad(a) symmetric.
  Mat b_theta = -b * th;
  b_theta = 0.5 * (b_theta + b_theta.transpose());
  Eigen::LLT<Mat> llt(b_theta);
  if (llt.info() != Eigen::Success) throw ModelError("B_θ is not positive definite");
  const Mat upper = llt.matrixU();  // y = upper * x
  const Mat upper_inv = upper.inverse();

  std::vector<Vec> cartan = orthonormalize(model->cartan_generators(), b, d);
  const int r = static_cast<int>(cartan.size());

  std::vector<Cluster> clusters{{Mat::Identity(d, d), {}}};
  for (const Vec& a : cartan) {
    Mat s = upper * model->ad(a) * upper_inv;
    s = 0.5 * (s + s.transpose());
    std::vector<Cluster> next;
    for (const Cluster& c : clusters) {
      Eigen::SelfAdjointEigenSolver<Mat> es(c.q.transpose() * s * c.q);
      const Vec& w = es.eigenvalues();
      int start = 0;
      while (start < w.size()) {
        int end = start;
        while (end + 1 < w.size() && w(end + 1) - w(end) <= tol::eigen) ++end;
        if (end + 1 < w.size()) {
          const double gap = w(end + 1) - w(end);
          if (gap < kAmbiguousGap) {
            throw DecompositionError("ad(𝔞) eigenvalues separated by " + std::to_string(gap) +
                                     ", too close to the clustering tolerance");
          }
        }
        Cluster piece;
        piece.q = c.q * es.eigenvectors().middleCols(start, end - start + 1);
        piece.key = c.key;
        piece.key.push_back(w.segment(start, end - start + 1).mean());
        next.push_back(std::move(piece));
        start = end + 1;
      }
    }
    clusters = std::move(next);
  }

  std::vector<Cluster> positive;
  for (Cluster& c : clusters) {
    if (lexicographic_sign(c.key) == Sign::positive) positive.push_back(std::move(c));
  }
  std::sort(positive.begin(), positive.end(),
            [](const Cluster& x, const Cluster& y) { return lexicographic_less(x.key, y.key); });

  SolvableModel out;
  out.lie_ = model;

  const Mat p = 0.5 * (id - th);
  const Mat metric = p.transpose() * b * p;

  std::vector<Vec> columns(cartan.begin(), cartan.end());
  out.root_of_.assign(r, -1);
  out.datum_.rank = r;
  out.datum_.verified = true;
  for (std::size_t idx = 0; idx < positive.size(); ++idx) {
    const Cluster& c = positive[idx];
    const Mat projector = upper_inv * c.q * c.q.transpose() * upper;
    std::vector<Vec> candidates;
    for (int i = 0; i < d; ++i) candidates.push_back(projector.col(i));
    const int m = static_cast<int>(c.q.cols());
    std::vector<Vec> space = orthonormalize(candidates, metric, m);
    if (static_cast<int>(space.size()) != m) {
      throw DecompositionError("could not build an orthonormal basis of a root space");
    }
    std::vector<int> indices;
    for (const Vec& v : space) {
      indices.push_back(static_cast<int>(columns.size()));
      columns.push_back(v);
      out.root_of_.push_back(static_cast<int>(idx));
    }
    out.root_spaces_.push_back(std::move(indices));
    out.datum_.roots.push_back(Eigen::Map<const Vec>(c.key.data(), r));
    out.datum_.mult.push_back(m);
  }
  for (int i = 0; i < out.datum_.size(); ++i) {
    const auto dbl = out.datum_.double_of(i);
    out.datum_.double_mult.push_back(dbl ? out.datum_.mult[*dbl] : 0);
  }
  out.datum_.validate();

  std::vector<Vec> k_candidates;
  for (int i = 0; i < d; ++i) k_candidates.push_back(0.5 * (id + th).col(i));
  std::vector<Vec> k_space = orthonormalize(k_candidates, b_theta, d);

  const int n = static_cast<int>(columns.size());
  const int dim_k = static_cast<int>(k_space.size());
  if (dim_k + n != d) {
    throw ModelError("Iwasawa dimension count fails: dim 𝔨 + dim 𝔞 + dim 𝔫 = " +
                     std::to_string(dim_k + n) + " but dim 𝔤 = " + std::to_string(d) +
                     " (𝔞 may not be maximal abelian)");
  }
  out.embedding_.resize(d, n);
  for (int i = 0; i < n; ++i) out.embedding_.col(i) = columns[i];
  out.k_basis_.resize(d, dim_k);
  for (int i = 0; i < dim_k; ++i) out.k_basis_.col(i) = k_space[i];

  Mat adapted(d, d);
  adapted << out.k_basis_, out.embedding_;
  Eigen::FullPivLU<Mat> lu(adapted);
  if (!lu.isInvertible()) throw ModelError("𝔨 + 𝔞 + 𝔫 does not span 𝔤");
  out.adapted_inverse_ = lu.inverse();

  out.ad_basis_.assign(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.ad_basis_[i].col(j) = out.require_an(model->bracket(columns[i], columns[j]));
    }
  }
  return out;
}

SolvableModel load_model(std::string_view id) {
  return root_space_decomposition(std::make_shared<const LieModel>(make_model(id)));
}

}  // namespace isoflow
