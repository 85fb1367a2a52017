#include "isoflow/foliation_config.hpp"

#include <cmath>

#include "isoflow/errors.hpp"

namespace isoflow {

bool FoliationConfig::has_doubled_root() const {
  for (int idx : set.indices) {
    if (datum.double_of(idx)) return true;
  }
  return false;
}

void FoliationConfig::validate() const {
  datum.validate();
  const ValidationReport report = validate_orthogonal_set(datum, set);
  if (!report.valid) {
    std::string msg = "invalid chosen roots:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw ConfigError(msg);
  }
  if (k() == 0 && m0() == 0) throw ConfigError("k = 0 and 𝔟 = {0} leave no normal directions");
  if (static_cast<int>(offsets.size()) != k()) {
    throw ConfigError("expected " + std::to_string(k()) + " offsets, got " +
                      std::to_string(offsets.size()));
  }
  for (double t : offsets) {
    if (!std::isfinite(t)) throw ConfigError("offsets must be finite");
  }
  if (static_cast<int>(xi_index.size()) != k()) {
    throw ConfigError("expected " + std::to_string(k()) + " xi indices, got " +
                      std::to_string(xi_index.size()));
  }
  for (int i = 0; i < k(); ++i) {
    const int m = datum.mult[set.indices[i]];
    if (xi_index[i] < 0 || xi_index[i] >= m) {
      throw ConfigError("xi index " + std::to_string(xi_index[i]) + " out of range for a root of multiplicity " +
                        std::to_string(m));
    }
  }
  // checks orthonormality of 𝔟 and 𝔟 ⊥ H_{λ_i}
  (void)mean_curvature_coefficients(datum, set, b_basis);
}

MeanCurvatureCoefficients FoliationConfig::coefficients() const {
  return mean_curvature_coefficients(datum, set, b_basis);
}

Vec FoliationConfig::section_point() const {
  Vec u = Vec::Zero(m0() + k());
  for (int j = 0; j < k(); ++j) u(m0() + j) = offsets[j];
  return u;
}

namespace {

const SolvableModel& require(const std::shared_ptr<const SolvableModel>& m) {
  if (!m) throw ConfigError("this operation needs a matrix model; the config has a root datum only");
  return *m;
}

}  // namespace

Vec FoliationConfig::xi(int i) const {
  const SolvableModel& m = require(model);
  return Vec::Unit(m.dimension(), m.root_space(set.indices.at(i)).at(xi_index.at(i)));
}

Vec FoliationConfig::root_vector(int i) const {
  return require(model).root_vector(set.indices.at(i));
}

Vec FoliationConfig::xi_t(int i, double t) const {
  const double l = datum.norm(set.indices.at(i));
  return xi(i) / std::cosh(l * t) - std::tanh(l * t) / l * root_vector(i);
}

Vec FoliationConfig::b_vector(int i) const {
  const SolvableModel& m = require(model);
  Vec v = Vec::Zero(m.dimension());
  v.head(m.rank()) = b_basis.at(i);
  return v;
}

Mat FoliationConfig::normal_frame() const {
  const SolvableModel& m = require(model);
  Mat out(m.dimension(), m0() + k());
  for (int i = 0; i < m0(); ++i) out.col(i) = b_vector(i);
  for (int j = 0; j < k(); ++j) out.col(m0() + j) = xi_t(j, offsets[j]);
  return out;
}

FoliationConfig FoliationConfig::with_offsets(std::vector<double> t) const {
  FoliationConfig out = *this;
  out.offsets = std::move(t);
  out.validate();
  return out;
}

namespace {

FoliationConfig build(const RootDatum& datum, std::shared_ptr<const SolvableModel> model,
                      const ConfigOptions& opts) {
  FoliationConfig cfg;
  cfg.datum = datum;
  cfg.model = std::move(model);
  if (opts.k < 0) throw ConfigError("k must be non-negative");
  if (opts.b_dim < 0) throw ConfigError("dim 𝔟 must be non-negative");
  if (opts.chosen.empty()) {
    cfg.set = default_orthogonal_set(datum, opts.k);
  } else {
    cfg.set.indices = opts.chosen;
    if (cfg.set.size() != opts.k) throw ConfigError("k does not match the number of chosen roots");
  }
  for (int idx : cfg.set.indices) {
    if (idx < 0 || idx >= datum.size()) throw ConfigError("chosen root index out of range");
  }
  const int max_b = max_b_dimension(datum, cfg.set);
  if (opts.b_dim > max_b) {
    throw ConfigError("dim 𝔟 = " + std::to_string(opts.b_dim) + " exceeds rank − k = " +
                      std::to_string(max_b));
  }
  cfg.b_basis = complement_basis(datum, cfg.set, opts.b_dim);
  if (static_cast<int>(opts.offsets.size()) > cfg.k()) {
    throw ConfigError("more offsets than chosen roots");
  }
  cfg.offsets.assign(cfg.k(), 0.0);
  for (std::size_t j = 0; j < opts.offsets.size(); ++j) cfg.offsets[j] = opts.offsets[j];
  cfg.xi_index = opts.xi_index.empty() ? std::vector<int>(cfg.k(), 0) : opts.xi_index;
  cfg.validate();
  return cfg;
}

}  // namespace

FoliationConfig make_config(std::shared_ptr<const SolvableModel> model, const ConfigOptions& opts) {
  if (!model) throw ConfigError("null model");
  const RootDatum datum = model->datum();
  return build(datum, std::move(model), opts);
}

FoliationConfig make_config(const RootDatum& datum, const ConfigOptions& opts) {
  return build(datum, nullptr, opts);
}

}  // namespace isoflow
