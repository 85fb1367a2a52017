#include "isoflow/foliation.hpp"

#include <cmath>
#include <sstream>

#include "isoflow/connection.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/geodesic.hpp"

namespace isoflow {

namespace {

const SolvableModel& require_model(const FoliationConfig& cfg) {
  if (!cfg.model) throw ConfigError("this operation needs a matrix model; the config has a root datum only");
  return *cfg.model;
}

struct Label {
  std::string kind;  // a_rest, ker, double, line, root
  int i = -1;
  int q = -1;
};

Label parse(const std::string& label) {
  Label out;
  std::stringstream ss(label);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  out.kind = parts.at(0);
  if (parts.size() > 1) out.i = std::stoi(parts[1]);
  if (parts.size() > 2) out.q = std::stoi(parts[2]);
  return out;
}

std::string label(const std::string& kind, int i, int q = -1) {
  std::string s = kind + ":" + std::to_string(i);
  if (q >= 0) s += ":" + std::to_string(q);
  return s;
}

bool is_chosen_or_double(const FoliationConfig& cfg, int mu) {
  for (int idx : cfg.set.indices) {
    if (idx == mu) return true;
    const auto dbl = cfg.datum.double_of(idx);
    if (dbl && *dbl == mu) return true;
  }
  return false;
}

// Gram–Schmidt of `candidates` against the orthonormal `fixed`, keeping the
// new unit vectors.
std::vector<Vec> complete(const std::vector<Vec>& fixed, const std::vector<Vec>& candidates) {
  std::vector<Vec> all = fixed;
  std::vector<Vec> out;
  for (Vec v : candidates) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& u : all) v -= u.dot(v) * u;
    }
    if (v.norm() > 1e-8) {
      v.normalize();
      all.push_back(v);
      out.push_back(v);
    }
  }
  return out;
}

double offset_of(const FoliationConfig& cfg, int i) { return cfg.offsets.at(i); }

Mat tangent_projector(const TangentDecomposition& td) { return td.basis * td.basis.transpose(); }

void require_normal(const TangentDecomposition& td, const Vec& nu) {
  if (nu.size() != td.basis.rows()) throw InputError("normal vector has wrong dimension");
  const double tangential = (td.basis.transpose() * nu).cwiseAbs().maxCoeff();
  if (td.basis.cols() > 0 && tangential > 1e-9 * (1.0 + nu.norm())) {
    throw DomainError("vector is not normal to the leaf (tangential component " +
                      std::to_string(tangential) + ")");
  }
}

}  // namespace

const char* to_string(CoefficientTable table) {
  switch (table) {
    case CoefficientTable::corrected:
      return "corrected";
    case CoefficientTable::reference:
      return "reference";
    case CoefficientTable::reference_unit:
      return "reference_unit";
  }
  return "?";
}

std::string NormalSelector::label() const {
  return (kind == Kind::b ? "b:" : "xi:") + std::to_string(index);
}

std::vector<NormalSelector> normal_generators(const FoliationConfig& cfg) {
  std::vector<NormalSelector> out;
  for (int i = 0; i < cfg.m0(); ++i) out.push_back(NormalSelector::b(i));
  for (int j = 0; j < cfg.k(); ++j) out.push_back(NormalSelector::root(j));
  return out;
}

Vec normal_vector(const FoliationConfig& cfg, NormalSelector sel) {
  if (sel.kind == NormalSelector::Kind::b) {
    if (sel.index < 0 || sel.index >= cfg.m0()) throw DomainError("no 𝔟 generator " + sel.label());
    return cfg.b_vector(sel.index);
  }
  if (sel.index < 0 || sel.index >= cfg.k()) throw DomainError("no chosen root " + sel.label());
  return cfg.xi_t(sel.index, offset_of(cfg, sel.index));
}

std::vector<Block> block_structure(const FoliationConfig& cfg) {
  std::vector<Block> out;
  int offset = 0;
  const auto push = [&](std::string name, int size) {
    if (size <= 0) return;
    out.push_back({std::move(name), offset, size, 0.0});
    offset += size;
  };
  push("a_rest", cfg.datum.rank - cfg.m0() - cfg.k());
  for (int i = 0; i < cfg.k(); ++i) {
    const int lambda = cfg.set.indices[i];
    const auto dbl = cfg.datum.double_of(lambda);
    const int m2 = dbl ? cfg.datum.mult[*dbl] : 0;
    push(label("ker", i), cfg.datum.mult[lambda] - 1 - m2);
    for (int q = 0; q < m2; ++q) {
      push(label("double", i, q), 2);
      // without a model the bracket norm follows from ‖[θξ,X]‖² = 4‖λ‖²
      out.back().pair_norm = 2.0 * cfg.datum.norm(lambda);
    }
    push(label("line", i), 1);
  }
  for (int mu = 0; mu < cfg.datum.size(); ++mu) {
    if (!is_chosen_or_double(cfg, mu)) push(label("root", mu), cfg.datum.mult[mu]);
  }
  return out;
}

TangentDecomposition tangent_decomposition(const FoliationConfig& cfg) {
  const SolvableModel& model = require_model(cfg);
  const int n = model.dimension();
  const int r = model.rank();
  TangentDecomposition td;
  td.normals = cfg.normal_frame();
  std::vector<Vec> columns;
  int offset = 0;
  const auto push = [&](std::string name, const std::vector<Vec>& vecs, double pair_norm = 0) {
    if (vecs.empty()) return;
    td.blocks.push_back({std::move(name), offset, static_cast<int>(vecs.size()), pair_norm});
    offset += static_cast<int>(vecs.size());
    columns.insert(columns.end(), vecs.begin(), vecs.end());
  };

  // 𝔞 ⊖ (𝔟 + Σ ℝH_{λ_i})
  std::vector<Vec> fixed;
  for (int i = 0; i < cfg.m0(); ++i) fixed.push_back(cfg.b_vector(i));
  for (int i = 0; i < cfg.k(); ++i) fixed.push_back(cfg.root_vector(i).normalized());
  std::vector<Vec> axes;
  for (int a = 0; a < r; ++a) axes.push_back(Vec::Unit(n, a));
  push("a_rest", complete(fixed, axes));

  for (int i = 0; i < cfg.k(); ++i) {
    const int lambda = cfg.set.indices[i];
    const Vec xi = cfg.xi(i);
    const double l = cfg.datum.norm(lambda);
    const double t = offset_of(cfg, i);

    std::vector<Vec> used{xi};
    std::vector<std::pair<std::vector<Vec>, double>> pairs;
    if (const auto dbl = cfg.datum.double_of(lambda)) {
      for (int xq : model.root_space(*dbl)) {
        const Vec x = Vec::Unit(n, xq);
        const Vec y = model.require_an(model.lie().bracket(model.theta(xi), model.to_algebra(x)));
        const double rho = y.norm();
        if (rho < 1e-9) throw ModelError("[θξ, X] vanishes for a basis vector of g_2λ");
        const Vec yh = y / rho;
        const auto root = homogeneous_root(model, yh);
        if (!root || *root != lambda) throw ModelError("[θξ, X] is not in g_λ");
        for (const Vec& u : used) {
          if (std::abs(u.dot(yh)) > 1e-9) throw ModelError("brackets [θξ, X_q] are not orthogonal in g_λ");
        }
        used.push_back(yh);
        pairs.push_back({{x, yh}, rho});
      }
    }
    std::vector<Vec> own;
    for (int idx : model.root_space(lambda)) own.push_back(Vec::Unit(n, idx));
    push(label("ker", i), complete(used, own));
    for (std::size_t q = 0; q < pairs.size(); ++q) push(label("double", i, static_cast<int>(q)), pairs[q].first, pairs[q].second);
    const Vec line = std::tanh(l * t) * xi + cfg.root_vector(i) / (std::cosh(l * t) * l);
    push(label("line", i), {line});
  }
  for (int mu = 0; mu < model.datum().size(); ++mu) {
    if (is_chosen_or_double(cfg, mu)) continue;
    std::vector<Vec> vecs;
    for (int idx : model.root_space(mu)) vecs.push_back(Vec::Unit(n, idx));
    push(label("root", mu), vecs);
  }

  td.basis.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) td.basis.col(static_cast<Eigen::Index>(c)) = columns[c];
  if (td.basis.cols() + td.normals.cols() != n) {
    throw ModelError("tangent decomposition has " + std::to_string(td.basis.cols()) +
                     " vectors, expected " + std::to_string(n - td.normals.cols()));
  }
  Mat full(n, n);
  full << td.basis, td.normals;
  if ((full.transpose() * full - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
    throw ModelError("tangent and normal frames are not orthonormal");
  }
  return td;
}

PairBlock pair_block(double root_norm, double pair_norm, double t, CoefficientTable table) {
  const double l = root_norm;
  const double s = std::tanh(l * t);
  const double c = 1.0 / std::cosh(l * t);
  PairBlock out;
  out.shape.resize(2, 2);
  out.jacobi.resize(2, 2);
  out.commutator.resize(2, 2);
  if (table == CoefficientTable::corrected) {
    const double rho = pair_norm;
    out.shape << -2 * l * s, -c * rho / 2,
                 -c * rho / 2, -l * s;
    out.jacobi << -l * l * (1 + 3 * s * s), -1.5 * l * s * c * rho,
                  -1.5 * l * s * c * rho, -l * l * (1 + 3 * c * c);
    const double k = 1.5 * l * l * c * c * c * rho;
    out.commutator << 0, k,
                      -k, 0;
    return out;
  }
  // Reference coefficients. Columns are images of X and Ŷ = Y/ρ; with the
  // raw-bracket reading the Y-coefficients scale by ρ.
  const double f = table == CoefficientTable::reference ? pair_norm : 1.0;
  const double c3 = std::pow(std::cosh(std::sqrt(2.0) * t), 3);
  out.shape << -2 * l * s, -l * l * c / f,
               -0.5 * c * f, -l * s;
  out.jacobi << -l * l * (1 + 3 * s * s), -6 * l * s * c / f,
                -1.5 * l * s * c * f, std::sqrt(2.0) * l / 4 * (1 - 3 * s * s);
  out.commutator << 0, -6 / (c3 * f),
                    -1.5 * f / c3, 0;
  return out;
}

namespace {

enum class OpKind { shape, jacobi, commutator };

BlockOperator assemble(const FoliationConfig& cfg, NormalSelector sel, OpKind kind,
                       CoefficientTable table) {
  const SolvableModel& model = require_model(cfg);
  TangentDecomposition td = tangent_decomposition(cfg);
  const Vec nu = normal_vector(cfg, sel);
  const int m = static_cast<int>(td.basis.cols());
  Mat mat = Mat::Zero(m, m);

  std::vector<int> root_cols;
  for (const Block& b : td.blocks) {
    if (parse(b.label).kind == "root") {
      for (int c = 0; c < b.size; ++c) root_cols.push_back(b.offset + c);
    }
  }

  if (sel.kind == NormalSelector::Kind::b) {
    const Vec& e0 = cfg.b_basis.at(sel.index);
    for (const Block& b : td.blocks) {
      const Label lb = parse(b.label);
      if (lb.kind != "root") continue;
      const double v = cfg.datum.roots[lb.i].dot(e0);
      const double d = kind == OpKind::shape ? v : kind == OpKind::jacobi ? -v * v : 0.0;
      mat.block(b.offset, b.offset, b.size, b.size) = d * Mat::Identity(b.size, b.size);
    }
    return {td.blocks, td.basis, mat};
  }

  const int i = sel.index;
  const double l = cfg.datum.norm(cfg.set.indices.at(i));
  const double t = offset_of(cfg, i);
  const double s = std::tanh(l * t);
  for (const Block& b : td.blocks) {
    const Label lb = parse(b.label);
    if (lb.i != i || lb.kind == "root" || lb.kind == "a_rest") continue;
    auto target = mat.block(b.offset, b.offset, b.size, b.size);
    if (lb.kind == "double") {
      const PairBlock pb = pair_block(l, b.pair_norm, t, table);
      target = kind == OpKind::shape ? pb.shape : kind == OpKind::jacobi ? pb.jacobi : pb.commutator;
      continue;
    }
    double d = 0;
    if (kind == OpKind::shape) {
      d = -l * s;
    } else if (kind == OpKind::jacobi) {
      if (lb.kind == "line" || table == CoefficientTable::corrected) {
        d = -l * l;
      } else {
        d = 0.5 * l * l * (1 - 3 * s * s);
      }
    }
    target = d * Mat::Identity(b.size, b.size);
  }
  // remaining root spaces: connection-table route
  if (kind != OpKind::commutator) {
    for (int a : root_cols) {
      const Vec xa = td.basis.col(a);
      const Vec image = kind == OpKind::shape ? Vec(-levi_civita_table(model, xa, nu))
                                              : curvature_table(model, xa, nu, nu);
      for (int c : root_cols) mat(c, a) = td.basis.col(c).dot(image);
    }
  }
  return {td.blocks, td.basis, mat};
}

}  // namespace

BlockOperator shape_operator(const FoliationConfig& cfg, NormalSelector sel, CoefficientTable table) {
  return assemble(cfg, sel, OpKind::shape, table);
}

BlockOperator shape_operator(const FoliationConfig& cfg, const Vec& nu, CoefficientTable table) {
  const TangentDecomposition td = tangent_decomposition(cfg);
  require_normal(td, nu);
  const Vec coeffs = td.normals.transpose() * nu;
  BlockOperator out{td.blocks, td.basis, Mat::Zero(td.basis.cols(), td.basis.cols())};
  const auto gens = normal_generators(cfg);
  for (std::size_t p = 0; p < gens.size(); ++p) {
    if (coeffs(static_cast<Eigen::Index>(p)) == 0.0) continue;
    out.matrix += coeffs(static_cast<Eigen::Index>(p)) * shape_operator(cfg, gens[p], table).matrix;
  }
  return out;
}

BlockOperator normal_jacobi(const FoliationConfig& cfg, NormalSelector sel, CoefficientTable table) {
  return assemble(cfg, sel, OpKind::jacobi, table);
}

BlockOperator commutator_closed_form(const FoliationConfig& cfg, NormalSelector sel,
                                     CoefficientTable table) {
  return assemble(cfg, sel, OpKind::commutator, table);
}

namespace {

Mat oracle_shape(const SolvableModel& model, const TangentDecomposition& td, const Vec& nu) {
  require_normal(td, nu);
  const int n = model.dimension();
  const Mat pt = tangent_projector(td);
  Mat out(n, n);
  for (int j = 0; j < n; ++j) out.col(j) = -pt * levi_civita(model, Vec::Unit(n, j), nu);
  return out * pt;
}

Mat oracle_jacobi(const SolvableModel& model, const Vec& nu) {
  const int n = model.dimension();
  Mat out(n, n);
  for (int j = 0; j < n; ++j) out.col(j) = curvature(model, Vec::Unit(n, j), nu, nu);
  return out;
}

OracleComparison compare(const TangentDecomposition& td, const Mat& closed, const Mat& oracle_ambient) {
  OracleComparison out;
  out.closed = closed;
  out.oracle = td.basis.transpose() * oracle_ambient * td.basis;
  out.max_deviation = max_deviation(out.closed, out.oracle);
  Mat diff = (out.closed - out.oracle).cwiseAbs();
  for (const Block& b : td.blocks) {
    out.block_deviation.push_back(
        {b.label, diff.block(b.offset, b.offset, b.size, b.size).maxCoeff()});
    diff.block(b.offset, b.offset, b.size, b.size).setZero();
  }
  out.coupling_deviation = diff.size() ? diff.maxCoeff() : 0.0;
  if (td.normals.cols() > 0 && td.basis.cols() > 0) {
    out.normal_leak = (td.normals.transpose() * oracle_ambient * td.basis).cwiseAbs().maxCoeff();
  }
  return out;
}

Mat tangent_commutator(const Mat& a, const Mat& r, const Mat& pt) {
  const Mat rt = pt * r * pt;
  return a * rt - rt * a;
}

}  // namespace

Mat oracle_shape_operator(const FoliationConfig& cfg, const Vec& nu) {
  return oracle_shape(require_model(cfg), tangent_decomposition(cfg), nu);
}

Mat oracle_normal_jacobi(const FoliationConfig& cfg, const Vec& nu) {
  const SolvableModel& model = require_model(cfg);
  require_normal(tangent_decomposition(cfg), nu);
  return oracle_jacobi(model, nu);
}

OracleComparison compare_shape_operator(const FoliationConfig& cfg, NormalSelector sel,
                                        CoefficientTable table) {
  const SolvableModel& model = require_model(cfg);
  const TangentDecomposition td = tangent_decomposition(cfg);
  const Vec nu = normal_vector(cfg, sel);
  OracleComparison out = compare(td, shape_operator(cfg, sel, table).matrix, oracle_shape(model, td, nu));
  out.normal_leak = 0;
  return out;
}

OracleComparison compare_normal_jacobi(const FoliationConfig& cfg, NormalSelector sel,
                                       CoefficientTable table) {
  const SolvableModel& model = require_model(cfg);
  const TangentDecomposition td = tangent_decomposition(cfg);
  const Vec nu = normal_vector(cfg, sel);
  return compare(td, normal_jacobi(cfg, sel, table).matrix, oracle_jacobi(model, nu));
}

OracleComparison compare_commutator(const FoliationConfig& cfg, NormalSelector sel,
                                    CoefficientTable table) {
  const SolvableModel& model = require_model(cfg);
  const TangentDecomposition td = tangent_decomposition(cfg);
  const Vec nu = normal_vector(cfg, sel);
  const Mat pt = tangent_projector(td);
  const Mat c = tangent_commutator(oracle_shape(model, td, nu), oracle_jacobi(model, nu), pt);
  OracleComparison out = compare(td, commutator_closed_form(cfg, sel, table).matrix, c);
  out.normal_leak = 0;
  return out;
}

AdaptednessReport adaptedness(const FoliationConfig& cfg) {
  cfg.validate();
  AdaptednessReport report;
  const auto gens = normal_generators(cfg);

  if (!cfg.model_backed()) {
    report.method = "closed_form";
    report.verified = false;
    for (const NormalSelector& g : gens) {
      AdaptednessEntry e;
      e.normal = g.label();
      if (g.kind == NormalSelector::Kind::root) {
        const int lambda = cfg.set.indices[g.index];
        if (cfg.datum.double_of(lambda)) {
          const double l = cfg.datum.norm(lambda);
          const PairBlock pb = pair_block(l, 2 * l, cfg.offsets[g.index], CoefficientTable::corrected);
          e.commutator_norm = std::abs(pb.commutator(0, 1));
        }
      }
      e.adapted = e.commutator_norm <= report.tolerance;
      report.adapted = report.adapted && e.adapted;
      report.entries.push_back(e);
    }
    return report;
  }

  report.method = "oracle";
  report.verified = true;
  const SolvableModel& model = *cfg.model;
  const TangentDecomposition td = tangent_decomposition(cfg);
  const Mat pt = tangent_projector(td);

  std::vector<std::pair<std::string, Vec>> normals;
  for (const NormalSelector& g : gens) normals.push_back({g.label(), normal_vector(cfg, g)});
  const std::size_t ng = normals.size();
  for (std::size_t p = 0; p < ng; ++p) {
    for (std::size_t q = p + 1; q < ng; ++q) {
      normals.push_back({normals[p].first + "+" + normals[q].first,
                         (normals[p].second + normals[q].second) / std::sqrt(2.0)});
    }
  }
  for (const auto& [name, nu] : normals) {
    const Mat a = oracle_shape(model, td, nu);
    const Mat r = oracle_jacobi(model, nu);
    AdaptednessEntry e;
    e.normal = name;
    e.commutator_norm = tangent_commutator(a, r, pt).cwiseAbs().maxCoeff();
    e.normal_leak = td.basis.cols() > 0 && td.normals.cols() > 0
                        ? (td.normals.transpose() * r * td.basis).cwiseAbs().maxCoeff()
                        : 0.0;
    e.adapted = e.commutator_norm <= report.tolerance && e.normal_leak <= report.tolerance;
    report.adapted = report.adapted && e.adapted;
    report.entries.push_back(e);
  }

  for (int i = 0; i < cfg.k(); ++i) {
    const Vec nu = normal_vector(cfg, NormalSelector::root(i));
    const Mat c = tangent_commutator(oracle_shape(model, td, nu), oracle_jacobi(model, nu), pt);
    const double l = cfg.datum.norm(cfg.set.indices[i]);
    for (const Block& b : td.blocks) {
      const Label lb = parse(b.label);
      if (lb.kind != "double" || lb.i != i) continue;
      const Vec x = td.basis.col(b.offset);
      const Vec y = td.basis.col(b.offset + 1);
      PairCommutator pc;
      pc.label = b.label;
      pc.t = cfg.offsets[i];
      pc.pair_norm = b.pair_norm;
      pc.oracle_x_to_y = y.dot(c * x);
      pc.oracle_y_to_x = x.dot(c * y);
      const PairBlock corrected = pair_block(l, b.pair_norm, pc.t, CoefficientTable::corrected);
      const PairBlock reference = pair_block(l, b.pair_norm, pc.t, CoefficientTable::reference);
      pc.corrected_x_to_y = corrected.commutator(1, 0);
      pc.corrected_y_to_x = corrected.commutator(0, 1);
      pc.reference_x_to_y = reference.commutator(1, 0);
      pc.reference_y_to_x = reference.commutator(0, 1);
      report.pairs.push_back(pc);
    }
  }
  return report;
}

std::vector<std::string> SectionChart::frame_labels() const {
  std::vector<std::string> out;
  for (int i = 0; i < cfg_.m0(); ++i) out.push_back("e0:" + std::to_string(i));
  for (int j = 0; j < cfg_.k(); ++j) out.push_back("xi:" + std::to_string(j));
  return out;
}

Mat SectionChart::frame_at(const Vec& u) const {
  if (u.size() != dimension()) throw InputError("section coordinates have wrong dimension");
  const SolvableModel& model = require_model(cfg_);
  Mat out(model.dimension(), dimension());
  for (int i = 0; i < cfg_.m0(); ++i) out.col(i) = cfg_.b_vector(i);
  for (int j = 0; j < cfg_.k(); ++j) out.col(cfg_.m0() + j) = cfg_.xi_t(j, u(cfg_.m0() + j));
  return out;
}

Mat SectionChart::point(const Vec& u, double step) const {
  if (u.size() != dimension()) throw InputError("section coordinates have wrong dimension");
  const SolvableModel& model = require_model(cfg_);
  const int size = model.lie().matrix_size();
  Mat g = Mat::Identity(size, size);
  GeodesicOptions opts;
  opts.step = step;
  Vec xi0 = Vec::Zero(model.dimension());
  for (int i = 0; i < cfg_.m0(); ++i) xi0 += u(i) * cfg_.b_vector(i);
  if (xi0.norm() > 0) g = geodesic(model, xi0, 1.0, opts).group;
  for (int j = 0; j < cfg_.k(); ++j) {
    const double t = u(cfg_.m0() + j);
    if (t != 0.0) g = g * geodesic(model, cfg_.xi(j), t, opts).group;
  }
  return g;
}

SectionChart::TransportCheck SectionChart::verify_transport(const Vec& u, double step) const {
  if (u.size() != dimension()) throw InputError("section coordinates have wrong dimension");
  const SolvableModel& model = require_model(cfg_);
  TransportCheck out;
  GeodesicOptions opts;
  opts.step = step;
  opts.stride = 10;
  Mat frame = frame_at(Vec::Zero(dimension()));
  const auto check = [&](const TransportSample& sample, const Mat& expected) {
    out.frame_deviation = std::max(out.frame_deviation, max_deviation(sample.transported, expected));
    const Mat gram = sample.transported.transpose() * sample.transported;
    out.gram_deviation =
        std::max(out.gram_deviation, max_deviation(gram, Mat::Identity(gram.rows(), gram.cols())));
  };

  Vec xi0 = Vec::Zero(model.dimension());
  for (int i = 0; i < cfg_.m0(); ++i) xi0 += u(i) * cfg_.b_vector(i);
  if (xi0.norm() > 0) {
    for (const auto& sample : parallel_transport(model, xi0, frame, 1.0, opts)) check(sample, frame);
  }
  for (int j = 0; j < cfg_.k(); ++j) {
    const double t = u(cfg_.m0() + j);
    if (t == 0.0) continue;
    const auto samples = parallel_transport(model, cfg_.xi(j), frame, t, opts);
    for (const auto& sample : samples) {
      Mat expected = frame;
      expected.col(cfg_.m0() + j) = cfg_.xi_t(j, sample.s);
      check(sample, expected);
    }
    frame.col(cfg_.m0() + j) = cfg_.xi_t(j, t);
  }
  return out;
}

SectionChart section_chart(const FoliationConfig& cfg) {
  cfg.validate();
  return SectionChart(cfg);
}

Vec leaf_mean_curvature(const FoliationConfig& cfg) {
  const MeanCurvatureCoefficients c = cfg.coefficients();
  Vec h(c.dimension());
  for (int i = 0; i < c.m0(); ++i) h(i) = c.drift[i];
  for (int j = 0; j < c.k(); ++j) {
    const double l = c.root_norm[j];
    h(c.m0() + j) = -l * std::tanh(l * cfg.offsets[j]) * c.weight[j];
  }
  return h;
}

Vec leaf_mean_curvature_trace(const FoliationConfig& cfg) {
  const SolvableModel& model = require_model(cfg);
  const TangentDecomposition td = tangent_decomposition(cfg);
  const auto gens = normal_generators(cfg);
  Vec h(static_cast<Eigen::Index>(gens.size()));
  for (std::size_t p = 0; p < gens.size(); ++p) {
    h(static_cast<Eigen::Index>(p)) = oracle_shape(model, td, normal_vector(cfg, gens[p])).trace();
  }
  return h;
}

}  // namespace isoflow
