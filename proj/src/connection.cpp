#include "isoflow/connection.hpp"

#include <cmath>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

void check_dim(const SolvableModel& model, const Vec& x) {
  if (x.size() != model.dimension()) {
    throw InputError("vector has dimension " + std::to_string(x.size()) + ", expected " +
                     std::to_string(model.dimension()));
  }
}

// Homogeneous pieces of x: the 𝔞-part (root -1) and one part per root space.
struct Piece {
  int root;
  Vec v;
};

std::vector<Piece> pieces(const SolvableModel& model, const Vec& x) {
  std::vector<Piece> out;
  const int n = model.dimension();
  Vec a = Vec::Zero(n);
  a.head(model.rank()) = x.head(model.rank());
  if (a.squaredNorm() > 0) out.push_back({-1, a});
  for (int r = 0; r < model.datum().size(); ++r) {
    Vec v = Vec::Zero(n);
    bool any = false;
    for (int i : model.root_space(r)) {
      v(i) = x(i);
      any = any || x(i) != 0.0;
    }
    if (any) out.push_back({r, std::move(v)});
  }
  return out;
}

// [θa, b] with a, b in 𝔞+𝔫, returned in 𝔞+𝔫 coordinates.
Vec theta_bracket(const SolvableModel& model, const Vec& a, const Vec& b) {
  return model.require_an(model.lie().bracket(model.theta(a), model.to_algebra(b)));
}

// ∇_x y for x ∈ g_λ (or 𝔞 when lambda = -1) and y ∈ g_μ (or 𝔞).
Vec table_entry(const SolvableModel& model, int lambda, const Vec& x, int mu, const Vec& y) {
  const int n = model.dimension();
  if (lambda < 0) return Vec::Zero(n);
  if (mu < 0) return -model.root_value(lambda, y) * x;
  const Vec xy = model.bracket(x, y);
  switch (model.relation(lambda, mu)) {
    case RootRelation::equal:
      return 0.5 * xy + x.dot(y) * model.root_vector(lambda);
    case RootRelation::lambda_above:
      // θ[Y,θX] = [θY, X]
      return 0.5 * (xy + theta_bracket(model, y, x));
    case RootRelation::mu_above:
      // θ[X,θY] = [θX, Y]
      return 0.5 * (xy + theta_bracket(model, x, y));
    case RootRelation::unrelated:
      break;
  }
  return 0.5 * xy;
}

}  // namespace

std::optional<int> homogeneous_root(const SolvableModel& model, const Vec& x) {
  check_dim(model, x);
  const double scale = x.cwiseAbs().maxCoeff();
  const double cut = 1e-12 * scale;
  std::optional<int> found;
  bool zero = true;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) <= cut) continue;
    zero = false;
    const int r = model.root_of(i);
    if (found && *found != r) return std::nullopt;
    found = r;
  }
  if (zero) return -1;
  return found;
}

Mat ad_star(const SolvableModel& model, const Vec& x) {
  check_dim(model, x);
  return model.ad(x).transpose();
}

Mat ad_star_table(const SolvableModel& model, const Vec& x) {
  const auto root = homogeneous_root(model, x);
  if (!root) throw UnsupportedArgument("ad* table needs x in 𝔞 or in a single root space");
  if (*root < 0) return model.ad(x);
  const int n = model.dimension();
  const int lambda = *root;
  Mat out = Mat::Zero(n, n);
  for (int mu = 0; mu < model.datum().size(); ++mu) {
    for (int j : model.root_space(mu)) {
      const Vec y = Vec::Unit(n, j);
      switch (model.relation(lambda, mu)) {
        case RootRelation::equal:
          out.col(j) = -x.dot(y) * model.root_vector(lambda);
          break;
        case RootRelation::mu_above:
          out.col(j) = -theta_bracket(model, x, y);
          break;
        default:
          break;
      }
    }
  }
  return out;
}

Vec levi_civita(const SolvableModel& model, const Vec& x, const Vec& y) {
  check_dim(model, x);
  check_dim(model, y);
  const Mat adx = model.ad(x);
  const Mat ady = model.ad(y);
  return 0.5 * (adx * y - adx.transpose() * y - ady.transpose() * x);
}

Vec levi_civita_table(const SolvableModel& model, const Vec& x, const Vec& y) {
  check_dim(model, x);
  check_dim(model, y);
  Vec out = Vec::Zero(model.dimension());
  const auto px = pieces(model, x);
  const auto py = pieces(model, y);
  for (const Piece& a : px) {
    for (const Piece& b : py) out += table_entry(model, a.root, a.v, b.root, b.v);
  }
  return out;
}

Vec curvature(const SolvableModel& model, const Vec& x, const Vec& y, const Vec& z) {
  const auto nabla = [&](const Vec& a, const Vec& b) { return levi_civita(model, a, b); };
  return nabla(x, nabla(y, z)) - nabla(y, nabla(x, z)) - nabla(model.bracket(x, y), z);
}

Vec curvature_table(const SolvableModel& model, const Vec& x, const Vec& y, const Vec& z) {
  const auto nabla = [&](const Vec& a, const Vec& b) { return levi_civita_table(model, a, b); };
  return nabla(x, nabla(y, z)) - nabla(y, nabla(x, z)) - nabla(model.bracket(x, y), z);
}

}  // namespace isoflow
