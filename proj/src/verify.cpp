#include "isoflow/verify.hpp"

#include <cmath>
#include <random>

#include "isoflow/connection.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/flow.hpp"
#include "isoflow/foliation.hpp"
#include "isoflow/geodesic.hpp"

namespace isoflow {

bool VerifyReport::passed() const {
  for (const Check& c : checks) {
    if (!c.informational && !c.passed) return false;
  }
  return true;
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const Check& c : checks) {
    if (!c.informational && !c.passed) out.push_back(c.id);
  }
  return out;
}

double VerifyReport::max_deviation() const {
  double worst = 0;
  for (const Check& c : checks) {
    if (!c.informational && c.kind == "deviation") worst = std::max(worst, c.value);
  }
  return worst;
}

namespace {

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : report_(r) {}

  void bound(std::string id, double value, double tol, std::string note = "") {
    report_.checks.push_back({std::move(id), "deviation", value, tol, value <= tol, false, std::move(note)});
  }
  void rate(std::string id, double value, double tol, std::string note) {
    report_.checks.push_back({std::move(id), "rate", value, tol, value <= tol, false, std::move(note)});
  }
  void info(std::string id, double value, double tol, std::string note) {
    report_.checks.push_back({std::move(id), "deviation", value, tol, value <= tol, true, std::move(note)});
  }
  void require(std::string id, bool ok, std::string note = "") {
    report_.checks.push_back({std::move(id), "condition", ok ? 0.0 : 1.0, 0.0, ok, false, std::move(note)});
  }

 private:
  VerifyReport& report_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void model_checks(const SolvableModel& model, Recorder& rec) {
  const ModelInvariants inv = check_invariants(model.lie());
  rec.bound("model.jacobi", inv.jacobi, tol::algebraic);
  rec.bound("model.killing_symmetry", inv.killing_symmetry, tol::algebraic);
  rec.bound("model.killing_invariance", inv.killing_invariance, tol::algebraic);
  rec.bound("model.theta_involution", inv.theta_involution, tol::algebraic);
  rec.bound("model.theta_automorphism", inv.theta_automorphism, tol::algebraic);
  rec.require("model.killing_positive_on_p", inv.min_eigen_p > 0, "min eigenvalue " + fmt(inv.min_eigen_p));
  rec.require("model.killing_negative_on_k", inv.max_eigen_k < 0, "max eigenvalue " + fmt(inv.max_eigen_k));
  rec.bound("model.cartan_in_p", inv.cartan_in_p, tol::algebraic);
  rec.bound("model.cartan_abelian", inv.cartan_abelian, tol::algebraic);

  const int n = model.dimension();
  rec.bound("model.metric_orthonormal", max_deviation(model.induced_metric(), Mat::Identity(n, n)),
            tol::algebraic);

  double action = 0;
  for (int a = 0; a < model.rank(); ++a) {
    const Vec h = Vec::Unit(n, a);
    for (int i = model.rank(); i < n; ++i) {
      const Vec x = Vec::Unit(n, i);
      const double lam = model.root_value(model.root_of(i), h);
      action = std::max(action, (model.bracket(h, x) - lam * x).cwiseAbs().maxCoeff());
    }
  }
  rec.bound("model.root_action", action, tol::algebraic);

  for (int r = 0; r < model.datum().size(); ++r) {
    const double norm = model.datum().norm(r);
    rec.info("model.root_norm_vs_sqrt2." + std::to_string(r), std::abs(norm - std::sqrt(2.0)), tol::eigen,
             "measured |lambda| = " + fmt(norm) + ", multiplicity " + std::to_string(model.datum().mult[r]));
  }
}

void oracle_checks(const SolvableModel& model, Recorder& rec, const VerifyOptions& opts) {
  const int n = model.dimension();
  const Mat g = model.induced_metric();
  const auto e = [n](int i) { return Vec::Unit(n, i); };

  double adjoint = 0, table = 0, connection = 0, torsion = 0, compat = 0;
  for (int i = 0; i < n; ++i) {
    const Mat ads = ad_star(model, e(i));
    table = std::max(table, max_deviation(ad_star_table(model, e(i)), ads));
    for (int j = 0; j < n; ++j) {
      const Vec nab = levi_civita(model, e(i), e(j));
      connection = std::max(connection, (levi_civita_table(model, e(i), e(j)) - nab).cwiseAbs().maxCoeff());
      torsion = std::max(torsion, (nab - levi_civita(model, e(j), e(i)) - model.bracket(e(i), e(j)))
                                      .cwiseAbs()
                                      .maxCoeff());
      for (int k = 0; k < n; ++k) {
        const double lhs = (model.bracket(e(i), e(j))).dot(g * e(k));
        const double rhs = e(j).dot(g * (ads * e(k)));
        adjoint = std::max(adjoint, std::abs(lhs - rhs));
        const double c = nab.dot(g * e(k)) + e(j).dot(g * levi_civita(model, e(i), e(k)));
        compat = std::max(compat, std::abs(c));
      }
    }
  }
  rec.bound("lie_oracle.ad_star_adjoint", adjoint, tol::algebraic);
  rec.bound("lie_oracle.ad_star_table", table, tol::algebraic);
  rec.bound("lie_oracle.connection_table", connection, tol::algebraic);
  rec.bound("lie_oracle.torsion_free", torsion, tol::algebraic);
  rec.bound("lie_oracle.metric_compatible", compat, tol::algebraic);

  std::vector<std::vector<std::vector<Vec>>> r(n, std::vector<std::vector<Vec>>(n, std::vector<Vec>(n)));
  double table_curv = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        r[i][j][k] = curvature(model, e(i), e(j), e(k));
        table_curv = std::max(table_curv,
                              (curvature_table(model, e(i), e(j), e(k)) - r[i][j][k]).cwiseAbs().maxCoeff());
      }
    }
  }
  double anti = 0, pair = 0, bianchi = 0, sectional = -1e300;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) sectional = std::max(sectional, r[i][j][j].dot(e(i)));
      for (int k = 0; k < n; ++k) {
        anti = std::max(anti, (r[i][j][k] + r[j][i][k]).cwiseAbs().maxCoeff());
        bianchi = std::max(bianchi, (r[i][j][k] + r[j][k][i] + r[k][i][j]).cwiseAbs().maxCoeff());
        for (int l = 0; l < n; ++l) pair = std::max(pair, std::abs(r[i][j][k](l) - r[k][l][i](j)));
      }
    }
  }
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    Vec x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = normal(rng);
      y(i) = normal(rng);
    }
    x.normalize();
    y -= x.dot(y) * x;
    y.normalize();
    sectional = std::max(sectional, curvature(model, x, y, y).dot(x));
  }
  rec.bound("lie_oracle.curvature_table", table_curv, tol::algebraic);
  rec.bound("lie_oracle.curvature_antisymmetry", anti, tol::algebraic);
  rec.bound("lie_oracle.curvature_pair_symmetry", pair, tol::algebraic);
  rec.bound("lie_oracle.bianchi", bianchi, tol::algebraic);
  rec.bound("lie_oracle.sectional_nonpositive", std::max(sectional, 0.0), tol::algebraic,
            "max sectional curvature " + fmt(sectional));

  GeodesicOptions gopt;
  gopt.step = opts.step;
  gopt.track_group = false;
  for (int root = 0; root < model.datum().size(); ++root) {
    const Vec xi = e(model.root_space(root).front());
    double dev = 0;
    for (double end : {5.0, -5.0}) {
      for (const auto& s : geodesic_path(model, xi, end, gopt)) {
        dev = std::max(dev, (s.velocity - geodesic_velocity_closed_form(model, xi, s.s)).cwiseAbs().maxCoeff());
      }
    }
    rec.bound("lie_oracle.geodesic.root" + std::to_string(root), dev, 1e-7);
  }
  {
    const Vec a = e(0);
    double dev = 0;
    for (const auto& s : geodesic_path(model, a, 5.0, gopt)) dev = std::max(dev, (s.velocity - a).cwiseAbs().maxCoeff());
    rec.bound("lie_oracle.geodesic.a", dev, 1e-7);
  }
}

void foliation_checks(const FoliationConfig& base, Recorder& rec, const VerifyOptions& opts) {
  const SolvableModel& model = *base.model;
  const int n = model.dimension();

  double drift_dev = 0;
  const MeanCurvatureCoefficients coeffs = base.coefficients();
  for (int i = 0; i < base.m0(); ++i) {
    Mat ad = model.ad(base.b_vector(i));
    drift_dev = std::max(drift_dev, std::abs(ad.trace() - coeffs.drift[i]));
  }
  rec.bound("root_data.drift_vs_trace", drift_dev, tol::algebraic);

  {
    const auto expected = block_structure(base);
    const auto actual = tangent_decomposition(base).blocks;
    bool same = expected.size() == actual.size();
    for (std::size_t b = 0; same && b < expected.size(); ++b) {
      same = expected[b].label == actual[b].label && expected[b].size == actual[b].size &&
             std::abs(expected[b].pair_norm - actual[b].pair_norm) <= tol::algebraic;
    }
    rec.require("foliation.block_structure", same, "datum-derived blocks (with bracket norm 2|lambda|) match the model");
  }

  std::vector<FoliationConfig> sweep;
  if (base.k() == 0) {
    sweep.push_back(base);
  } else {
    for (double t : opts.sweep) sweep.push_back(base.with_offsets(std::vector<double>(base.k(), t)));
  }

  double trace_dev = 0;
  struct Acc {
    double shape = 0, jacobi = 0, comm = 0, leak = 0;
    double pub_shape[2] = {0, 0}, pub_jacobi[2] = {0, 0}, pub_comm[2] = {0, 0};
  };
  std::vector<Acc> acc(normal_generators(base).size());
  for (const FoliationConfig& cfg : sweep) {
    const auto gens = normal_generators(cfg);
    for (std::size_t p = 0; p < gens.size(); ++p) {
      const auto s = compare_shape_operator(cfg, gens[p]);
      const auto j = compare_normal_jacobi(cfg, gens[p]);
      const auto c = compare_commutator(cfg, gens[p]);
      acc[p].shape = std::max(acc[p].shape, s.max_deviation);
      acc[p].jacobi = std::max(acc[p].jacobi, j.max_deviation);
      acc[p].comm = std::max(acc[p].comm, c.max_deviation);
      acc[p].leak = std::max(acc[p].leak, j.normal_leak);
      int q = 0;
      for (CoefficientTable table : {CoefficientTable::reference, CoefficientTable::reference_unit}) {
        acc[p].pub_shape[q] = std::max(acc[p].pub_shape[q], compare_shape_operator(cfg, gens[p], table).max_deviation);
        acc[p].pub_jacobi[q] = std::max(acc[p].pub_jacobi[q], compare_normal_jacobi(cfg, gens[p], table).max_deviation);
        acc[p].pub_comm[q] = std::max(acc[p].pub_comm[q], compare_commutator(cfg, gens[p], table).max_deviation);
        ++q;
      }
    }
    trace_dev = std::max(trace_dev, (leaf_mean_curvature(cfg) - leaf_mean_curvature_trace(cfg)).cwiseAbs().maxCoeff());
  }
  const auto gens = normal_generators(base);
  const char* readings[2] = {"raw bracket", "unit bracket"};
  for (std::size_t p = 0; p < gens.size(); ++p) {
    const std::string g = gens[p].label();
    rec.bound("foliation.shape_operator." + g, acc[p].shape, 1e-8);
    rec.bound("foliation.normal_jacobi." + g, acc[p].jacobi, 1e-8);
    rec.bound("foliation.commutator." + g, acc[p].comm, 1e-8);
    rec.info("foliation.jacobi_normal_leak." + g, acc[p].leak, tol::algebraic,
             "R(nu) applied to tangent vectors, normal component");
    for (int q = 0; q < 2; ++q) {
      const std::string suffix = std::string(q == 0 ? ".raw." : ".unit.") + g;
      const std::string note = std::string("reference coefficients, ") + readings[q] + " reading";
      rec.info("foliation.reference.shape_operator" + suffix, acc[p].pub_shape[q], 1e-8, note);
      rec.info("foliation.reference.normal_jacobi" + suffix, acc[p].pub_jacobi[q], 1e-8, note);
      rec.info("foliation.reference.commutator" + suffix, acc[p].pub_comm[q], 1e-8, note);
    }
  }
  rec.bound("foliation.trace_consistency", trace_dev, tol::algebraic);

  for (const Block& b : tangent_decomposition(base).blocks) {
    if (b.label.rfind("double:", 0) != 0) continue;
    const int i = std::stoi(b.label.substr(7));
    const double l = base.datum.norm(base.set.indices[i]);
    rec.bound("foliation.pair_norm." + b.label, std::abs(b.pair_norm - 2 * l), tol::algebraic,
              "|[theta xi, X]| = " + fmt(b.pair_norm) + ", 2|lambda| = " + fmt(2 * l));
  }

  {
    Vec u = Vec::Zero(base.m0() + base.k());
    for (int i = 0; i < base.m0(); ++i) u(i) = 0.5;
    for (int j = 0; j < base.k(); ++j) u(base.m0() + j) = 1.0;
    const auto chart = section_chart(base);
    const auto check = chart.verify_transport(u, opts.step);
    rec.bound("foliation.transport_frame", check.frame_deviation, tol::ode);
    rec.bound("foliation.transport_gram", check.gram_deviation, tol::ode);
  }

  {
    const AdaptednessReport ad = adaptedness(base);
    const bool expect_adapted = !base.has_doubled_root();
    rec.require("foliation.adaptedness_verdict", ad.adapted == expect_adapted,
                std::string("verdict ") + (ad.adapted ? "adapted" : "not adapted") +
                    (base.has_doubled_root() ? " (doubled root chosen)" : " (no doubled root)"));
    for (const auto& pc : ad.pairs) {
      const double dev = std::max(std::abs(pc.oracle_x_to_y - pc.corrected_x_to_y),
                                  std::abs(pc.oracle_y_to_x - pc.corrected_y_to_x));
      rec.bound("foliation.pair_commutator." + pc.label, dev, 1e-8,
                "oracle (" + fmt(pc.oracle_x_to_y) + ", " + fmt(pc.oracle_y_to_x) + ")");
      const double pub = std::max(std::abs(pc.oracle_x_to_y - pc.reference_x_to_y),
                                  std::abs(pc.oracle_y_to_x - pc.reference_y_to_x));
      rec.info("foliation.reference.pair_commutator." + pc.label, pub, 1e-8,
               "reference (" + fmt(pc.reference_x_to_y) + ", " + fmt(pc.reference_y_to_x) + ")");
    }
  }
  (void)n;
}

void flow_checks(const FoliationConfig& base, Recorder& rec, const VerifyOptions& opts) {
  const MeanCurvatureCoefficients coeffs = base.coefficients();
  const int d = coeffs.dimension();
  IntegrateOptions iopt;
  iopt.step = opts.step;
  iopt.stride = 100;
  double worst = 0;
  for (double v : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    Vec u0 = Vec::Constant(d, v);
    for (int i = 0; i < coeffs.m0(); ++i) u0(i) = 0.25 * v;
    const FlowTrajectory traj = integrate(coeffs, u0, opts.horizon, iopt);
    worst = std::max(worst, traj.max_residual() / (1.0 + u0.norm()));
  }
  rec.bound("flow.residual", worst, tol::flow_base, "max residual / (1 + |u0|)");

  const auto leaf = find_minimal_leaf(coeffs);
  if (coeffs.m0() == 0) {
    rec.require("flow.minimal_leaf", leaf && vector_field(coeffs, *leaf).norm() < tol::algebraic);
  } else {
    rec.require("flow.minimal_leaf", !leaf, "b != {0}: no minimal leaf");
  }

  for (int j = 0; j < coeffs.k(); ++j) {
    const double rate = coeffs.decay_rate(j);
    const double a = decay_slot(coeffs.root_norm[j], coeffs.weight[j], 1.0, 9.5);
    const double b = decay_slot(coeffs.root_norm[j], coeffs.weight[j], 1.0, 10.5);
    const double measured = -(std::log(std::abs(b)) - std::log(std::abs(a)));
    rec.rate("flow.decay_rate." + std::to_string(j), std::abs(measured - rate) / rate, 0.05,
              "measured " + fmt(measured) + ", expected " + fmt(rate));
  }
}

}  // namespace

VerifyReport verify_config(const FoliationConfig& cfg, const VerifyOptions& opts) {
  if (!cfg.model_backed()) throw ConfigError("verify needs a model-backed config");
  cfg.validate();
  const SolvableModel& model = *cfg.model;
  VerifyReport report;
  report.model = model.lie().id();
  Recorder rec(report);

  model_checks(model, rec);
  oracle_checks(model, rec, opts);
  const ValidationReport vr = validate_orthogonal_set(cfg.datum, cfg.set);
  rec.require("root_data.orthogonal_set", vr.valid);
  foliation_checks(cfg, rec, opts);
  flow_checks(cfg, rec, opts);
  return report;
}

VerifyReport verify_model(std::shared_ptr<const SolvableModel> model, const VerifyOptions& opts) {
  if (!model) throw ConfigError("verify needs a model");
  ConfigOptions copts;
  copts.k = opts.k;
  copts.b_dim = opts.b_dim;
  return verify_config(make_config(std::move(model), copts), opts);
}

json to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const Check& c : report.checks) {
    json jc{{"id", c.id},
            {"kind", c.kind},
            {"value", c.value},
            {"tolerance", c.tolerance},
            {"passed", c.passed},
            {"informational", c.informational}};
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  return json{{"model", report.model},
              {"passed", report.passed()},
              {"max_deviation", report.max_deviation()},
              {"failures", report.failures()},
              {"checks", checks}};
}

}  // namespace isoflow
