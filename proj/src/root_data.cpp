#include "isoflow/root_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

bool same_vector(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol::eigen;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

std::optional<int> RootDatum::find(const Vec& h) const {
  for (int i = 0; i < size(); ++i) {
    if (same_vector(roots[i], h)) return i;
  }
  return std::nullopt;
}

std::optional<int> RootDatum::double_of(int root) const { return find(2.0 * roots.at(root)); }

std::vector<int> RootDatum::simple_roots() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    bool decomposable = false;
    for (int a = 0; a < size() && !decomposable; ++a) {
      for (int b = a; b < size() && !decomposable; ++b) {
        decomposable = same_vector(roots[a] + roots[b], roots[i]);
      }
    }
    if (!decomposable) out.push_back(i);
  }
  return out;
}

Vec RootDatum::weighted_root_sum() const {
  Vec sum = Vec::Zero(rank);
  for (int i = 0; i < size(); ++i) sum += mult[i] * roots[i];
  return sum;
}

void RootDatum::validate() const {
  std::vector<std::string> problems;
  if (rank < 1) problems.push_back("rank must be positive");
  if (mult.size() != roots.size() || double_mult.size() != roots.size()) {
    problems.push_back("roots, mult and double_mult must have equal length");
  }
  if (!problems.empty()) throw ConfigError("invalid root datum: " + join(problems));
  if (roots.empty()) throw ConfigError("invalid root datum: no positive roots");

  for (int i = 0; i < size(); ++i) {
    if (roots[i].size() != rank) {
      problems.push_back("root " + std::to_string(i) + " has dimension " +
                         std::to_string(roots[i].size()) + ", rank is " + std::to_string(rank));
      continue;
    }
    if (roots[i].norm() <= tol::eigen) problems.push_back("root " + std::to_string(i) + " is zero");
    if (mult[i] < 1) problems.push_back("mult[" + std::to_string(i) + "] must be >= 1");
    if (double_mult[i] < 0) problems.push_back("double_mult[" + std::to_string(i) + "] is negative");
  }
  if (!problems.empty()) throw ConfigError("invalid root datum: " + join(problems));

  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (i == j) continue;
      if (same_vector(roots[i], roots[j])) {
        problems.push_back("roots " + std::to_string(i) + " and " + std::to_string(j) +
                           " coincide");
      }
      // negative multiple: parallel with opposite orientation
      const double c = roots[i].dot(roots[j]);
      const double ni = roots[i].norm();
      const double nj = roots[j].norm();
      if (c < 0 && std::abs(std::abs(c) - ni * nj) <= tol::eigen * ni * nj) {
        problems.push_back("root " + std::to_string(i) + " is a negative multiple of root " +
                           std::to_string(j));
      }
    }
    const auto dbl = double_of(i);
    if (dbl && double_mult[i] != mult[*dbl]) {
      problems.push_back("double_mult[" + std::to_string(i) + "] = " +
                         std::to_string(double_mult[i]) + " but mult of 2λ is " +
                         std::to_string(mult[*dbl]));
    }
    if (!dbl && double_mult[i] != 0) {
      problems.push_back("double_mult[" + std::to_string(i) + "] is nonzero but 2λ is not listed");
    }
  }
  if (!problems.empty()) throw ConfigError("invalid root datum: " + join(problems));
}

ValidationReport validate_orthogonal_set(const RootDatum& datum, const SimpleOrthogonalSet& set) {
  ValidationReport report;
  const std::vector<int> simple = datum.simple_roots();
  for (int idx : set.indices) {
    if (idx < 0 || idx >= datum.size()) {
      throw InputError("chosen root index " + std::to_string(idx) + " out of range");
    }
    report.doubled.push_back(datum.double_of(idx).has_value());
    if (std::find(simple.begin(), simple.end(), idx) == simple.end()) {
      report.valid = false;
      report.violations.push_back("root " + std::to_string(idx) + " is not simple");
    }
  }
  for (int a = 0; a < set.size(); ++a) {
    for (int b = a + 1; b < set.size(); ++b) {
      const int i = set.indices[a];
      const int j = set.indices[b];
      if (i == j) {
        report.valid = false;
        report.violations.push_back("root " + std::to_string(i) + " chosen twice");
        continue;
      }
      const double ip = datum.roots[i].dot(datum.roots[j]);
      if (std::abs(ip) > tol::eigen * datum.norm(i) * datum.norm(j)) {
        std::ostringstream msg;
        msg << "roots " << i << " and " << j << " are not orthogonal (<H,H> = " << ip << ")";
        report.valid = false;
        report.violations.push_back(msg.str());
      }
    }
  }
  return report;
}

SimpleOrthogonalSet default_orthogonal_set(const RootDatum& datum, int k) {
  SimpleOrthogonalSet set;
  if (k < 0) throw ConfigError("k must be non-negative");
  for (int idx : datum.simple_roots()) {
    if (set.size() == k) break;
    bool orthogonal = true;
    for (int other : set.indices) {
      orthogonal = orthogonal && std::abs(datum.roots[idx].dot(datum.roots[other])) <=
                                     tol::eigen * datum.norm(idx) * datum.norm(other);
    }
    if (orthogonal) set.indices.push_back(idx);
  }
  if (set.size() < k) {
    throw ConfigError("only " + std::to_string(set.size()) +
                      " mutually orthogonal simple roots are available, k = " + std::to_string(k));
  }
  return set;
}

namespace {

std::vector<Vec> orthonormal_roots(const RootDatum& datum, const SimpleOrthogonalSet& set) {
  std::vector<Vec> q;
  for (int idx : set.indices) q.push_back(datum.roots.at(idx).normalized());
  return q;
}

}  // namespace

std::vector<Vec> complement_basis(const RootDatum& datum, const SimpleOrthogonalSet& set, int dim) {
  std::vector<Vec> q = orthonormal_roots(datum, set);
  const std::size_t fixed = q.size();
  for (int axis = 0; axis < datum.rank && static_cast<int>(q.size() - fixed) < dim; ++axis) {
    Vec v = Vec::Unit(datum.rank, axis);
    for (const Vec& u : q) v -= u.dot(v) * u;
    for (const Vec& u : q) v -= u.dot(v) * u;
    if (v.norm() > 1e-8) q.push_back(v.normalized());
  }
  if (static_cast<int>(q.size() - fixed) < dim) {
    throw ConfigError("dim 𝔟 = " + std::to_string(dim) + " exceeds the available " +
                      std::to_string(q.size() - fixed));
  }
  return {q.begin() + static_cast<std::ptrdiff_t>(fixed), q.end()};
}

int max_b_dimension(const RootDatum& datum, const SimpleOrthogonalSet& set) {
  return datum.rank - set.size();
}

double MeanCurvatureCoefficients::decay_rate(int j) const {
  return root_norm.at(j) * root_norm.at(j) * weight.at(j);
}

std::vector<double> MeanCurvatureCoefficients::decay_rates() const {
  std::vector<double> out;
  for (int j = 0; j < k(); ++j) out.push_back(decay_rate(j));
  return out;
}

MeanCurvatureCoefficients mean_curvature_coefficients(const RootDatum& datum,
                                                      const SimpleOrthogonalSet& set,
                                                      const std::vector<Vec>& b_basis) {
  datum.validate();
  const ValidationReport report = validate_orthogonal_set(datum, set);
  if (!report.valid) throw ConfigError("invalid chosen roots: " + join(report.violations));

  for (std::size_t i = 0; i < b_basis.size(); ++i) {
    if (b_basis[i].size() != datum.rank) throw ConfigError("𝔟 basis vector has wrong dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(b_basis[i].dot(b_basis[j]) - expect) > 1e-9) {
        throw ConfigError("𝔟 basis is not orthonormal");
      }
    }
    for (int idx : set.indices) {
      if (std::abs(b_basis[i].dot(datum.roots[idx])) > 1e-9 * datum.norm(idx)) {
        throw ConfigError("𝔟 basis vector " + std::to_string(i) +
                          " is not orthogonal to H of chosen root " + std::to_string(idx));
      }
    }
  }

  MeanCurvatureCoefficients out;
  out.verified = datum.verified;
  const Vec sum = datum.weighted_root_sum();
  for (const Vec& e : b_basis) out.drift.push_back(sum.dot(e));
  for (int idx : set.indices) {
    out.root_norm.push_back(datum.norm(idx));
    out.weight.push_back(datum.mult[idx] + 2 * datum.double_mult[idx]);
  }
  return out;
}

}  // namespace isoflow
